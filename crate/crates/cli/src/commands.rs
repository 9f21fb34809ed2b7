//! One function per subcommand, each producing a report and an exit code.

use std::time::Instant;

use derham_core::factor::{split, SplitOptions};
use derham_core::genericity::{is_generic, Witness};
use derham_core::parse::{parse_infer, print};
use derham_core::{count_factors, parse, Error, Exec, Polynomial, VarTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::plane::Plane2;
use crate::report::{
    rational_string, ErrorPayload, GenericPayload, PlaneResult, RunReport, SectionPayload,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_REDUCED: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;
pub const EXIT_RETRIES: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Count,
    Factor,
    Generic,
    Section,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Count => "count",
            Command::Factor => "factor",
            Command::Generic => "generic",
            Command::Section => "section",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Comma-separated variable order; inferred from the input if absent.
    pub vars: Option<String>,
    /// Variable for `generic`; the first one if absent.
    pub var: Option<String>,
    pub seed: u64,
    pub retries: usize,
    pub plane: Option<String>,
    pub random_planes: Option<usize>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            vars: None,
            var: None,
            seed: 0,
            retries: 8,
            plane: None,
            random_planes: None,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: RunReport,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.report.to_text(),
            Format::Json => self.report.to_json() + "\n",
        }
    }
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    witness: Option<String>,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            kind,
            message: message.into(),
            witness: None,
        }
    }

    fn from_error(e: Error, vars: &VarTable) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NotReduced { .. } => EXIT_NOT_REDUCED,
            Error::RetriesExhausted { .. } => EXIT_RETRIES,
            _ => EXIT_OTHER,
        };
        let kind = match &e {
            Error::Parse(_) => "parse",
            Error::NotReduced { .. } => "not_reduced",
            Error::RetriesExhausted { .. } => "retries_exhausted",
            Error::ConstantInput => "constant_input",
            Error::VariableAbsent(_) => "variable_absent",
            Error::DegreeCapExceeded(_) => "degree_cap",
            _ => "internal",
        };
        let witness = match &e {
            Error::NotReduced { witness } => print(witness, vars).ok(),
            Error::RetriesExhausted { char_poly, .. } => Some(char_poly.clone()),
            _ => None,
        };
        let message = match (&e, &witness) {
            (Error::NotReduced { .. }, Some(w)) => {
                format!("polynomial is not reduced; a repeated factor divides {w}")
            }
            _ => e.to_string(),
        };
        Failure {
            code,
            kind,
            message,
            witness,
        }
    }
}

/// Runs one subcommand on `expr`.
pub fn run(cmd: Command, expr: &str, opts: &Options) -> Outcome {
    let start = Instant::now();
    let mut report = RunReport {
        input: expr.to_string(),
        op: cmd.name().to_string(),
        seed: opts.seed,
        ..Default::default()
    };
    let result = read_input(expr, opts).and_then(|(p, vars)| {
        report.vars = vars.names().to_vec();
        match cmd {
            Command::Count => cmd_count(&p, &vars, &mut report),
            Command::Factor => cmd_factor(&p, &vars, opts, &mut report),
            Command::Generic => cmd_generic(&p, &vars, opts, &mut report),
            Command::Section => cmd_section(&p, &vars, opts, &mut report),
        }
    });
    if opts.timing {
        report.ms = Some(start.elapsed().as_millis() as u64);
    }
    let exit_code = match result {
        Ok(code) => code,
        Err(f) => {
            report.error = Some(ErrorPayload {
                kind: f.kind.to_string(),
                message: f.message,
                witness: f.witness,
            });
            f.code
        }
    };
    Outcome { report, exit_code }
}

fn read_input(expr: &str, opts: &Options) -> Result<(Polynomial, VarTable), Failure> {
    let parse_failure =
        |e: derham_core::parse::ParseError| Failure::new(EXIT_PARSE, "parse", e.to_string());
    match &opts.vars {
        Some(list) => {
            let names: Vec<&str> = list.split(',').map(str::trim).collect();
            let vars = VarTable::new(&names).map_err(parse_failure)?;
            let p = parse(expr, &vars).map_err(parse_failure)?;
            Ok((p, vars))
        }
        None => parse_infer(expr).map_err(parse_failure),
    }
}

fn show(p: &Polynomial, vars: &VarTable) -> String {
    print(p, vars).expect("arity matches the table")
}

fn cmd_count(p: &Polynomial, vars: &VarTable, report: &mut RunReport) -> Result<i32, Failure> {
    let s = count_factors(p).map_err(|e| Failure::from_error(e, vars))?;
    report.count = Some(s);
    report.irreducible = Some(s == 1);
    Ok(EXIT_OK)
}

fn cmd_factor(
    p: &Polynomial,
    vars: &VarTable,
    opts: &Options,
    report: &mut RunReport,
) -> Result<i32, Failure> {
    let r = split(
        p,
        SplitOptions {
            seed: opts.seed,
            max_retries: opts.retries,
        },
    )
    .map_err(|e| Failure::from_error(e, vars))?;
    report.count = Some(r.count);
    report.irreducible = Some(r.count == 1);
    report.factors = Some(r.factors.iter().map(|f| show(f, vars)).collect());
    report.residual = Some(show(&r.residual, vars));
    report.eigenvalues = Some(r.eigenvalues.iter().map(rational_string).collect());
    report.char_poly = Some(r.char_poly.display("t"));
    report.certificate = Some(r.certificate_ok);
    Ok(if r.is_complete() {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    })
}

fn cmd_generic(
    p: &Polynomial,
    vars: &VarTable,
    opts: &Options,
    report: &mut RunReport,
) -> Result<i32, Failure> {
    let (index, name) = match &opts.var {
        Some(name) => match vars.index_of(name) {
            Some(i) => (i, name.clone()),
            None => {
                return Err(Failure::new(
                    EXIT_PARSE,
                    "parse",
                    format!("unknown variable `{name}`"),
                ))
            }
        },
        None => match vars.names().first() {
            Some(n) => (0, n.clone()),
            None => return Err(Failure::from_error(Error::ConstantInput, vars)),
        },
    };
    let r = is_generic(p, index).map_err(|e| Failure::from_error(e, vars))?;
    let (kind, witness) = match &r.witness {
        Witness::Unit(c) => ("unit", vec![rational_string(c)]),
        Witness::Basis(g) => ("basis", g.iter().map(|q| show(q, vars)).collect()),
    };
    report.generic = Some(GenericPayload {
        variable: name,
        is_generic: r.is_generic,
        witness_kind: kind.to_string(),
        witness,
    });
    Ok(EXIT_OK)
}

fn section_vars() -> VarTable {
    VarTable::new(&["s", "t"]).expect("valid names")
}

/// Restricts `p` to `plane` and counts the factors of the section.
pub fn section_count(p: &Polynomial, plane: &Plane2) -> (Polynomial, Result<usize, String>) {
    let q = match plane.restrict(p) {
        Ok(q) => q,
        Err(e) => return (Polynomial::zero(2), Err(e.to_string())),
    };
    if q.is_constant() {
        return (q, Err("section is constant".into()));
    }
    let count = match count_factors(&q) {
        Ok(c) => Ok(c),
        Err(Error::NotReduced { .. }) => Err("section is not reduced".into()),
        Err(e) => Err(e.to_string()),
    };
    (q, count)
}

fn cmd_section(
    p: &Polynomial,
    vars: &VarTable,
    opts: &Options,
    report: &mut RunReport,
) -> Result<i32, Failure> {
    let n = vars.len();
    let planes: Vec<Plane2> = match (&opts.plane, opts.random_planes) {
        (Some(spec), None) => {
            vec![Plane2::parse(spec, n)
                .map_err(|e| Failure::new(EXIT_PARSE, "parse", e.to_string()))?]
        }
        (None, Some(k)) => {
            if n < 2 {
                return Err(Failure::new(
                    EXIT_OTHER,
                    "degenerate_plane",
                    "a plane needs at least two variables",
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..k).map(|_| Plane2::random(&mut rng, n)).collect()
        }
        _ => {
            return Err(Failure::new(
                EXIT_PARSE,
                "usage",
                "section needs exactly one of --plane or --random-planes",
            ))
        }
    };
    let ambient = count_factors(p).map_err(|e| Failure::from_error(e, vars))?;
    report.count = Some(ambient);
    report.irreducible = Some(ambient == 1);
    let st = section_vars();
    let results = Exec::default().map(&planes, |plane| {
        let (q, count) = section_count(p, plane);
        PlaneResult {
            plane: plane.to_string(),
            section: show(&q, &st),
            count: count.as_ref().ok().copied(),
            equal: count.as_ref().is_ok_and(|&c| c == ambient),
            degenerate: count.err(),
        }
    });
    let matches = results.iter().filter(|r| r.equal).count();
    let single_degenerate = opts.plane.is_some() && results[0].degenerate.is_some();
    let message = results[0].degenerate.clone();
    report.section = Some(SectionPayload {
        ambient_count: ambient,
        mismatches: results.len() - matches,
        matches,
        planes: results,
    });
    if single_degenerate {
        return Err(Failure::new(
            EXIT_OTHER,
            "degenerate_section",
            message.unwrap_or_default(),
        ));
    }
    Ok(EXIT_OK)
}
