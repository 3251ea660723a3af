use std::path::Path;

use serde_json::{Map, Value};

use super::expr::{parse_constant, parse_poly};
use crate::algebra::{Rational, RationalInterval, UniPoly, Var};
use crate::degree::SelectorPath;
use crate::error::{Error, Result};
use crate::family::{CoeffInterval, IntervalFamily};
use crate::pipeline::{Limits, ProblemSpec, R5Mode};
use crate::regions::PolygonDisk;

const KEYS: [&str; 8] = [
    "name",
    "degree",
    "alpha_range",
    "coefficients",
    "representatives",
    "r5",
    "nonlinearity",
    "limits",
];

/// Collects field errors so one pass reports all of them.
struct Reader {
    errors: Vec<String>,
}

impl Reader {
    fn fail<T>(&mut self, at: &str, msg: impl std::fmt::Display) -> Option<T> {
        self.errors.push(format!("{at}: {msg}"));
        None
    }

    fn text(&mut self, v: &Value, at: &str) -> Option<String> {
        match v {
            Value::String(s) => Some(s.clone()),
            Value::Number(n) if n.is_i64() => Some(n.to_string()),
            _ => self.fail(at, "expected an expression string or an integer"),
        }
    }

    fn poly(&mut self, v: &Value, at: &str) -> Option<UniPoly> {
        let s = self.text(v, at)?;
        parse_poly(&s).or_else(|e| self.fail(at, e).ok_or(())).ok()
    }

    fn constant(&mut self, v: &Value, at: &str) -> Option<Rational> {
        let s = self.text(v, at)?;
        parse_constant(&s).or_else(|e| self.fail(at, e).ok_or(())).ok()
    }

    fn usize(&mut self, v: &Value, at: &str) -> Option<usize> {
        match v.as_u64() {
            Some(n) => Some(n as usize),
            None => self.fail(at, "expected a nonnegative integer"),
        }
    }

    fn array<'v>(&mut self, v: &'v Value, at: &str) -> Option<&'v Vec<Value>> {
        match v.as_array() {
            Some(a) => Some(a),
            None => self.fail(at, "expected a list"),
        }
    }

    fn object<'v>(&mut self, v: &'v Value, at: &str) -> Option<&'v Map<String, Value>> {
        match v.as_object() {
            Some(o) => Some(o),
            None => self.fail(at, "expected an object"),
        }
    }

    fn coefficient(&mut self, v: &Value, at: &str) -> Option<CoeffInterval> {
        let o = self.object(v, at)?;
        if let Some(x) = o.get("value") {
            return self.poly(x, &format!("{at}.value")).map(CoeffInterval::point);
        }
        if let Some(c) = o.get("center") {
            let center = self.poly(c, &format!("{at}.center"));
            let eps = match o.get("epsilon") {
                Some(e) => self.constant(e, &format!("{at}.epsilon")),
                None => self.fail(at, "'center' needs 'epsilon'"),
            };
            return Some(CoeffInterval::around(center?, &eps?));
        }
        match (o.get("lo"), o.get("hi")) {
            (Some(lo), Some(hi)) => {
                let lo = self.poly(lo, &format!("{at}.lo"));
                let hi = self.poly(hi, &format!("{at}.hi"));
                Some(CoeffInterval::new(lo?, hi?))
            }
            _ => self.fail(at, "expected 'lo'/'hi', 'value', or 'center'/'epsilon'"),
        }
    }

    /// Ascending coefficients in lambda, each a polynomial in `a`.
    fn alpha_coeffs(&mut self, v: &Value, at: &str) -> Option<Vec<UniPoly>> {
        let items = self.array(v, at)?;
        let out: Vec<Option<UniPoly>> = items
            .iter()
            .enumerate()
            .map(|(k, x)| self.poly(x, &format!("{at}[{k}]")))
            .collect();
        out.into_iter().collect()
    }

    /// `{"coefficients": [...]}` or `{"factors": [[...], ...]}`.
    fn lambda_poly(&mut self, v: &Value, at: &str, range: &RationalInterval) -> Option<SelectorPath> {
        let o = self.object(v, at)?;
        let built = if let Some(c) = o.get("coefficients") {
            let c = self.alpha_coeffs(c, &format!("{at}.coefficients"))?;
            SelectorPath::free(c, range.clone())
        } else if let Some(f) = o.get("factors") {
            let items = self.array(f, &format!("{at}.factors"))?;
            let factors: Vec<Option<Vec<UniPoly>>> = items
                .iter()
                .enumerate()
                .map(|(k, x)| self.alpha_coeffs(x, &format!("{at}.factors[{k}]")))
                .collect();
            let factors: Option<Vec<Vec<UniPoly>>> = factors.into_iter().collect();
            SelectorPath::from_factors(&factors?, range.clone())
        } else {
            return self.fail(at, "expected 'coefficients' or 'factors'");
        };
        built.or_else(|e| self.fail(at, e).ok_or(())).ok()
    }

    fn constant_poly(&mut self, v: &Value, at: &str) -> Option<UniPoly> {
        let items = self.array(v, at)?;
        let c: Vec<Option<Rational>> = items
            .iter()
            .enumerate()
            .map(|(k, x)| self.constant(x, &format!("{at}[{k}]")))
            .collect();
        let c: Option<Vec<Rational>> = c.into_iter().collect();
        Some(UniPoly::new(c?, Var::Lambda))
    }

    fn disk(&mut self, v: &Value, at: &str) -> Option<PolygonDisk> {
        let items = self.array(v, at)?;
        let mut pts = Vec::new();
        for (k, p) in items.iter().enumerate() {
            let here = format!("{at}[{k}]");
            match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => {
                    let x = self.constant(x, &here);
                    let y = self.constant(y, &here);
                    pts.push((x?, y?));
                }
                _ => return self.fail(&here, "expected a vertex [alpha, beta]"),
            }
        }
        PolygonDisk::new(pts).or_else(|e| self.fail(at, e).ok_or(())).ok()
    }

    fn r5(&mut self, v: &Value, at: &str) -> Option<R5Mode> {
        let o = self.object(v, at)?;
        let mode = o.get("mode").and_then(Value::as_str);
        match mode {
            Some("disks") => {
                let list = match o.get("disks") {
                    Some(d) => self.array(d, &format!("{at}.disks"))?,
                    None => return self.fail(at, "disk mode needs 'disks'"),
                };
                let disks: Vec<Option<PolygonDisk>> = list
                    .iter()
                    .enumerate()
                    .map(|(k, d)| self.disk(d, &format!("{at}.disks[{k}]")))
                    .collect();
                Some(R5Mode::Disks(disks.into_iter().collect::<Option<_>>()?))
            }
            Some("non_resonance") => {
                let j_max = match o.get("j_max") {
                    None | Some(Value::Null) => None,
                    Some(j) => Some(self.usize(j, &format!("{at}.j_max"))?),
                };
                Some(R5Mode::NonResonance { j_max })
            }
            Some("descartes") => {
                let q = match o.get("q") {
                    Some(q) => self.constant_poly(q, &format!("{at}.q")),
                    None => self.fail(at, "descartes mode needs 'q'"),
                };
                let r = match o.get("r") {
                    Some(r) => self.constant_poly(r, &format!("{at}.r")),
                    None => self.fail(at, "descartes mode needs 'r'"),
                };
                Some(R5Mode::Descartes { q: q?, r: r? })
            }
            _ => self.fail(&format!("{at}.mode"), "expected 'disks', 'non_resonance' or 'descartes'"),
        }
    }

    fn limits(&mut self, v: Option<&Value>) -> Limits {
        let mut lim = Limits::default();
        let Some(v) = v else { return lim };
        let Some(o) = self.object(v, "limits") else { return lim };
        for (key, slot) in [
            ("depth_limit", &mut lim.depth_limit),
            ("grid_size", &mut lim.grid_size),
            ("max_ratio", &mut lim.max_ratio),
        ] {
            if let Some(x) = o.get(key) {
                if let Some(n) = self.usize(x, &format!("limits.{key}")) {
                    *slot = n;
                }
            }
        }
        for key in o.keys() {
            if !["depth_limit", "grid_size", "max_ratio"].contains(&key.as_str()) {
                self.errors.push(format!("limits: unknown key '{key}'"));
            }
        }
        lim
    }
}

/// Parses the text of a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut rd = Reader { errors: Vec::new() };
    let Some(root) = rd.object(&doc, "document") else {
        return Err(Error::InvalidProblem(rd.errors));
    };
    for key in root.keys() {
        if !KEYS.contains(&key.as_str()) {
            rd.errors.push(format!("unknown key '{key}'"));
        }
    }
    let field = |k: &str| root.get(k);
    let name = match field("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => rd.fail("name", "expected a string").unwrap_or_default(),
        None => String::new(),
    };
    let degree = match field("degree") {
        Some(d) => rd.usize(d, "degree"),
        None => rd.fail("degree", "missing"),
    };
    let range = match field("alpha_range").and_then(Value::as_array).map(Vec::as_slice) {
        Some([lo, hi]) => {
            let lo = rd.constant(lo, "alpha_range[0]");
            let hi = rd.constant(hi, "alpha_range[1]");
            match (lo, hi) {
                (Some(lo), Some(hi)) => RationalInterval::new(lo, hi).or_else(|e| rd.fail("alpha_range", e).ok_or(())).ok(),
                _ => None,
            }
        }
        _ => rd.fail("alpha_range", "expected [lo, hi]"),
    };
    let coeffs: Option<Vec<CoeffInterval>> = match field("coefficients") {
        Some(v) => rd.array(v, "coefficients").and_then(|items| {
            let c: Vec<Option<CoeffInterval>> = items
                .iter()
                .enumerate()
                .map(|(k, x)| rd.coefficient(x, &format!("coefficients[{k}]")))
                .collect();
            c.into_iter().collect()
        }),
        None => rd.fail("coefficients", "missing"),
    };
    if let (Some(n), Some(c)) = (degree, &coeffs) {
        if c.len() != n {
            rd.errors.push(format!(
                "coefficients: expected {n} entries (degrees 0 to {}), found {}",
                n.saturating_sub(1),
                c.len()
            ));
        }
    }
    let r5 = match field("r5") {
        Some(v) => rd.r5(v, "r5"),
        None => rd.fail("r5", "missing"),
    };
    let nonlinearity = match field("nonlinearity") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => rd.fail("nonlinearity", "expected a string").unwrap_or_default(),
        None => String::new(),
    };
    let limits = rd.limits(field("limits"));

    let family = match (coeffs, range.clone()) {
        (Some(c), Some(r)) if rd.errors.is_empty() => {
            IntervalFamily::new(c, r).or_else(|e| rd.fail("coefficients", e).ok_or(())).ok()
        }
        _ => None,
    };

    let mut rep = (None, None, None);
    if let Some(r) = &range {
        match field("representatives") {
            Some(v) => {
                if let Some(o) = rd.object(v, "representatives") {
                    let mut read = |k: &str| {
                        o.get(k)
                            .and_then(|x| rd.lambda_poly(x, &format!("representatives.{k}"), r))
                    };
                    let sel = read("selector");
                    let minus = read("minus");
                    let plus = read("plus");
                    let at = |p: Option<&SelectorPath>, alpha: &Rational| p.map(|p| p.at(alpha));
                    let rep_minus = at(minus.as_ref(), r.lo()).or_else(|| at(sel.as_ref(), r.lo()));
                    let rep_plus = at(plus.as_ref(), r.hi()).or_else(|| at(sel.as_ref(), r.hi()));
                    let keyed = o.contains_key("selector") || (o.contains_key("minus") && o.contains_key("plus"));
                    if !keyed {
                        rd.errors
                            .push("representatives: need 'selector' or both 'minus' and 'plus'".into());
                    }
                    rep = (rep_minus, rep_plus, sel);
                }
            }
            None => rd.errors.push("representatives: missing".into()),
        }
    }

    if !rd.errors.is_empty() {
        return Err(Error::InvalidProblem(rd.errors));
    }
    let (Some(family), (Some(rep_minus), Some(rep_plus), selector), Some(r5)) = (family, rep, r5) else {
        return Err(Error::InvalidProblem(vec!["incomplete problem".into()]));
    };
    let spec = ProblemSpec {
        name,
        family,
        rep_minus,
        rep_plus,
        selector,
        r5,
        nonlinearity,
        limits,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_problem(&text)
}
