//! The run report printed by every subcommand.
//!
//! Every key is always present (null when it does not apply), so the JSON
//! layout is the same for all operations. Polynomials are canonical printed
//! strings and rationals are `"a/b"` strings.

use derham_core::Rational;
use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub input: String,
    pub vars: Vec<String>,
    pub op: String,
    pub count: Option<usize>,
    pub irreducible: Option<bool>,
    pub factors: Option<Vec<String>>,
    pub residual: Option<String>,
    pub eigenvalues: Option<Vec<String>>,
    pub char_poly: Option<String>,
    pub certificate: Option<bool>,
    pub seed: u64,
    pub ms: Option<u64>,
    pub generic: Option<GenericPayload>,
    pub section: Option<SectionPayload>,
    pub error: Option<ErrorPayload>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericPayload {
    pub variable: String,
    pub is_generic: bool,
    /// `"unit"` or `"basis"`.
    pub witness_kind: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionPayload {
    pub ambient_count: usize,
    pub planes: Vec<PlaneResult>,
    pub matches: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneResult {
    pub plane: String,
    pub section: String,
    pub count: Option<usize>,
    pub equal: bool,
    /// Why the section could not be counted, if it could not.
    pub degenerate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorPayload {
    pub kind: String,
    pub message: String,
    pub witness: Option<String>,
}

/// `"a/b"`, with an explicit denominator even for integers.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("input: {}", self.input));
        out.push(format!("vars: {}", self.vars.join(",")));
        if let Some(e) = &self.error {
            out.push(format!("error ({}): {}", e.kind, e.message));
            if let Some(w) = &e.witness {
                out.push(format!("witness: {w}"));
            }
            return out.join("\n") + "\n";
        }
        if let Some(c) = self.count {
            out.push(format!("count: {c}"));
        }
        if let Some(i) = self.irreducible {
            out.push(format!(
                "absolutely irreducible: {}",
                if i { "yes" } else { "no" }
            ));
        }
        if let Some(fs) = &self.factors {
            if fs.is_empty() {
                out.push("factors: (none over Q)".into());
            }
            for f in fs {
                out.push(format!("factor: {f}"));
            }
        }
        if let Some(r) = &self.residual {
            out.push(format!("residual: {r}"));
        }
        if let Some(ev) = &self.eigenvalues {
            out.push(format!("eigenvalues: [{}]", ev.join(", ")));
        }
        if let Some(cp) = &self.char_poly {
            out.push(format!("char poly: {cp}"));
        }
        if let Some(ok) = self.certificate {
            out.push(format!("certificate: {}", if ok { "ok" } else { "FAILED" }));
        }
        if let Some(g) = &self.generic {
            out.push(format!(
                "generic in {}: {}",
                g.variable,
                if g.is_generic { "yes" } else { "no" }
            ));
            out.push(format!(
                "witness ({}): {}",
                g.witness_kind,
                g.witness.join(", ")
            ));
        }
        if let Some(sec) = &self.section {
            out.push(format!("ambient count: {}", sec.ambient_count));
            for p in &sec.planes {
                let count = p.count.map_or_else(|| "-".to_string(), |c| c.to_string());
                let mut line = format!(
                    "plane {}: section {} count {} {}",
                    p.plane,
                    p.section,
                    count,
                    if p.equal { "equal" } else { "DIFFERENT" }
                );
                if let Some(d) = &p.degenerate {
                    line.push_str(&format!(" ({d})"));
                }
                out.push(line);
            }
            out.push(format!(
                "matches: {} of {}",
                sec.matches,
                sec.matches + sec.mismatches
            ));
        }
        out.push(format!("seed: {}", self.seed));
        if let Some(ms) = self.ms {
            out.push(format!("time: {ms} ms"));
        }
        out.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use derham_core::poly::{rat, ratio};

    #[test]
    fn rationals_keep_denominators() {
        assert_eq!(rational_string(&ratio(-3, 6)), "-1/2");
        assert_eq!(rational_string(&rat(4)), "4/1");
    }

    #[test]
    fn all_keys_present() {
        let r = RunReport {
            input: "x".into(),
            vars: vec!["x".into()],
            op: "count".into(),
            count: Some(1),
            ..Default::default()
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in [
            "input",
            "vars",
            "op",
            "count",
            "factors",
            "residual",
            "eigenvalues",
            "char_poly",
            "certificate",
            "seed",
            "ms",
            "generic",
            "section",
            "error",
        ] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert!(v["ms"].is_null());
    }
}
