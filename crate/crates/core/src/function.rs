//! Functions on the half-line `(0, inf)`: named closed forms, powers,
//! products/sums of those, and interpolated tables, plus the text grammar
//! used by the CLI (`h`, `expneg`, `invlog2sq`, `invsq`, `zero`, `pow:<p>`,
//! `table:<path.csv>`, combined with `*`, `+` and parentheses).

use num_complex::Complex64;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `h(x) = 1/(1+x)`, the kernel profile of the equation itself.
    H,
    /// `exp(-x)`.
    ExpNeg,
    /// `1/ln^2(2+x)` - integrable against `1/(1+x)` but outside every `E_k`.
    InvLog2Sq,
    /// `1/(1+x^2)`.
    InvSq,
}

impl Builtin {
    fn eval(self, x: f64) -> f64 {
        match self {
            Builtin::H => 1.0 / (1.0 + x),
            Builtin::ExpNeg => (-x).exp(),
            Builtin::InvLog2Sq => {
                let l = (2.0 + x).ln();
                1.0 / (l * l)
            }
            Builtin::InvSq => 1.0 / (1.0 + x * x),
        }
    }
}

/// A complex-valued function on `(0, inf)`, evaluable at any positive `x`.
#[derive(Debug, Clone)]
pub enum HalfLineFunction {
    Zero,
    Builtin(Builtin),
    /// `x^p` with real exponent.
    Power(f64),
    Product(Box<HalfLineFunction>, Box<HalfLineFunction>),
    Sum(Box<HalfLineFunction>, Box<HalfLineFunction>),
    Table(TableFunction),
}

impl HalfLineFunction {
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            HalfLineFunction::Zero => Complex64::new(0.0, 0.0),
            HalfLineFunction::Builtin(b) => Complex64::new(b.eval(x), 0.0),
            HalfLineFunction::Power(p) => Complex64::new(x.powf(*p), 0.0),
            HalfLineFunction::Product(f, g) => f.eval(x) * g.eval(x),
            HalfLineFunction::Sum(f, g) => f.eval(x) + g.eval(x),
            HalfLineFunction::Table(t) => t.eval(x),
        }
    }

    pub fn h() -> Self {
        HalfLineFunction::Builtin(Builtin::H)
    }

    pub fn expneg() -> Self {
        HalfLineFunction::Builtin(Builtin::ExpNeg)
    }

    /// The common support of any embedded tables (`None` when table-free);
    /// evaluation outside it relies on power-law extrapolation.
    pub fn table_support(&self) -> Option<(f64, f64)> {
        match self {
            HalfLineFunction::Table(t) => Some((t.first_x(), t.last_x())),
            HalfLineFunction::Product(f, g) | HalfLineFunction::Sum(f, g) => {
                match (f.table_support(), g.table_support()) {
                    (Some((a, b)), Some((c, d))) => Some((a.max(c), b.min(d))),
                    (Some(s), None) | (None, Some(s)) => Some(s),
                    (None, None) => None,
                }
            }
            _ => None,
        }
    }
}

/// Sorted sample table with log-log interpolation and power-law extrapolation
/// from the edge slopes.
#[derive(Debug, Clone)]
pub struct TableFunction {
    ln_x: Vec<f64>,
    values: Vec<Complex64>,
    first_x: f64,
    last_x: f64,
}

impl TableFunction {
    pub fn new(points: Vec<(f64, Complex64)>) -> Result<Self, FunctionError> {
        if points.len() < 2 {
            return Err(FunctionError::Table(
                "a table needs at least two points".into(),
            ));
        }
        let mut ln_x = Vec::with_capacity(points.len());
        let mut values = Vec::with_capacity(points.len());
        let mut prev = 0.0f64;
        for &(x, v) in &points {
            if !(x > 0.0 && x.is_finite()) {
                return Err(FunctionError::Table(format!(
                    "table abscissae must be positive (got {x})"
                )));
            }
            if x <= prev {
                return Err(FunctionError::Table(format!(
                    "table abscissae must be strictly increasing (at {x})"
                )));
            }
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(FunctionError::Table(format!(
                    "table value at x = {x} is not finite"
                )));
            }
            prev = x;
            ln_x.push(x.ln());
            values.push(v);
        }
        Ok(TableFunction {
            first_x: points[0].0,
            last_x: points[points.len() - 1].0,
            ln_x,
            values,
        })
    }

    pub fn first_x(&self) -> f64 {
        self.first_x
    }

    pub fn last_x(&self) -> f64 {
        self.last_x
    }

    /// Complex power-law slope between two samples, `None` when a zero value
    /// makes the logarithm degenerate.
    fn slope(&self, i: usize, j: usize) -> Option<Complex64> {
        let (vi, vj) = (self.values[i], self.values[j]);
        if vi.norm() == 0.0 || vj.norm() == 0.0 {
            return None;
        }
        Some((vj / vi).ln() / (self.ln_x[j] - self.ln_x[i]))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let lx = x.ln();
        let n = self.ln_x.len();
        if x <= self.first_x {
            return match self.slope(0, 1) {
                Some(s) => self.values[0] * (s * (lx - self.ln_x[0])).exp(),
                None => self.values[0],
            };
        }
        if x >= self.last_x {
            return match self.slope(n - 2, n - 1) {
                Some(s) => self.values[n - 1] * (s * (lx - self.ln_x[n - 1])).exp(),
                None => self.values[n - 1],
            };
        }
        let hi = self.ln_x.partition_point(|&l| l < lx).max(1).min(n - 1);
        let lo = hi - 1;
        let t = (lx - self.ln_x[lo]) / (self.ln_x[hi] - self.ln_x[lo]);
        let (vlo, vhi) = (self.values[lo], self.values[hi]);
        if vlo.norm() > 0.0 && vhi.norm() > 0.0 {
            // log-log linear
            (vlo.ln() * (1.0 - t) + vhi.ln() * t).exp()
        } else {
            // linear in ln x when a zero value blocks the logarithm
            vlo * (1.0 - t) + vhi * t
        }
    }

    /// Reads `x,re[,im]` rows; blank lines, `#` comments, and a non-numeric
    /// header line are skipped.
    pub fn from_csv_path(path: &Path) -> Result<Self, FunctionError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FunctionError::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_text(&text)
    }

    pub fn from_csv_text(text: &str) -> Result<Self, FunctionError> {
        let mut points = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse = |s: &str| s.parse::<f64>();
            let x = match parse(fields[0]) {
                Ok(x) => x,
                Err(_) if idx == 0 => continue, // header row
                Err(_) => {
                    return Err(FunctionError::Table(format!(
                        "line {}: cannot parse abscissa `{}`",
                        idx + 1,
                        fields[0]
                    )))
                }
            };
            if fields.len() < 2 {
                return Err(FunctionError::Table(format!(
                    "line {}: need `x,re[,im]`",
                    idx + 1
                )));
            }
            let re = parse(fields[1]).map_err(|_| {
                FunctionError::Table(format!("line {}: bad value `{}`", idx + 1, fields[1]))
            })?;
            let im = if fields.len() > 2 {
                parse(fields[2]).map_err(|_| {
                    FunctionError::Table(format!("line {}: bad value `{}`", idx + 1, fields[2]))
                })?
            } else {
                0.0
            };
            points.push((x, Complex64::new(re, im)));
        }
        TableFunction::new(points)
    }
}

#[derive(Debug, Clone, Error)]
pub enum FunctionError {
    #[error("g-spec parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("table error: {0}")]
    Table(String),
    #[error("table io error: {0}")]
    Io(String),
}

/// Parses the g-spec grammar into an evaluable function.
pub fn parse_gspec(text: &str) -> Result<HalfLineFunction, FunctionError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> FunctionError {
        FunctionError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<HalfLineFunction, FunctionError> {
        let mut acc = self.parse_product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.parse_product()?;
            acc = HalfLineFunction::Sum(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<HalfLineFunction, FunctionError> {
        let mut acc = self.parse_atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.parse_atom()?;
            acc = HalfLineFunction::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    /// A run of characters that can appear inside one atom token.
    fn take_token(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_whitespace() || c == b'*' || c == b'+' || c == b'(' || c == b')' {
                break;
            }
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn parse_atom(&mut self) -> Result<HalfLineFunction, FunctionError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => {
                let tok_pos = self.pos;
                let tok = self.take_token();
                match tok {
                    "h" => Ok(HalfLineFunction::Builtin(Builtin::H)),
                    "expneg" => Ok(HalfLineFunction::Builtin(Builtin::ExpNeg)),
                    "invlog2sq" => Ok(HalfLineFunction::Builtin(Builtin::InvLog2Sq)),
                    "invsq" => Ok(HalfLineFunction::Builtin(Builtin::InvSq)),
                    "zero" => Ok(HalfLineFunction::Zero),
                    _ if tok.starts_with("pow:") => {
                        let p: f64 = tok[4..].parse().map_err(|_| {
                            self.pos = tok_pos + 4;
                            self.err("invalid exponent after `pow:`")
                        })?;
                        Ok(HalfLineFunction::Power(p))
                    }
                    _ if tok.starts_with("table:") => {
                        let path = &tok[6..];
                        if path.is_empty() {
                            self.pos = tok_pos;
                            return Err(self.err("missing path after `table:`"));
                        }
                        let table = TableFunction::from_csv_path(Path::new(path))?;
                        Ok(HalfLineFunction::Table(table))
                    }
                    "" => Err(self.err("expected a function atom")),
                    _ => {
                        self.pos = tok_pos;
                        Err(self.err(&format!("unknown function `{tok}`")))
                    }
                }
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_at_one() {
        assert_eq!(parse_gspec("h").unwrap().eval(1.0).re, 0.5);
        let v = parse_gspec("invlog2sq").unwrap().eval(1.0).re;
        assert!((v - 1.0 / (3.0f64.ln() * 3.0f64.ln())).abs() < 1e-15);
        let v = parse_gspec("pow:-0.3 * expneg").unwrap().eval(1.0).re;
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(parse_gspec("zero").unwrap().eval(3.0).norm(), 0.0);
    }

    #[test]
    fn grammar_structure() {
        let f = parse_gspec("(h + expneg) * pow:0.5").unwrap();
        let x = 2.0f64;
        let expect = (1.0 / 3.0 + (-2.0f64).exp()) * x.sqrt();
        assert!((f.eval(x).re - expect).abs() < 1e-15);

        let e = parse_gspec("pow:abc").unwrap_err();
        assert!(matches!(e, FunctionError::Parse { .. }));
        let e = parse_gspec("h + + h").unwrap_err();
        assert!(matches!(e, FunctionError::Parse { .. }));
        let e = parse_gspec("nosuch").unwrap_err();
        match e {
            FunctionError::Parse { position, .. } => assert_eq!(position, 0),
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn table_interpolation_and_extrapolation() {
        // samples of x^{-1/2}
        let pts: Vec<(f64, Complex64)> = (0..20)
            .map(|k| {
                let x = 10f64.powf(-2.0 + 0.2 * k as f64);
                (x, Complex64::new(x.powf(-0.5), 0.0))
            })
            .collect();
        let t = TableFunction::new(pts).unwrap();
        // interpolation is exact in log-log for a pure power law
        for &x in &[0.02, 0.5, 3.0, 40.0] {
            assert!((t.eval(x).re - x.powf(-0.5)).abs() < 1e-12 * x.powf(-0.5));
        }
        // extrapolation continues the power law
        for &x in &[1e-4, 1e4] {
            assert!((t.eval(x).re - x.powf(-0.5)).abs() < 1e-9 * x.powf(-0.5));
        }
    }

    #[test]
    fn table_validation() {
        let bad = TableFunction::new(vec![
            (1.0, Complex64::new(1.0, 0.0)),
            (0.5, Complex64::new(1.0, 0.0)),
        ]);
        assert!(matches!(bad, Err(FunctionError::Table(_))));
        let bad = TableFunction::new(vec![
            (-1.0, Complex64::new(1.0, 0.0)),
            (0.5, Complex64::new(1.0, 0.0)),
        ]);
        assert!(bad.is_err());
        let t = TableFunction::from_csv_text("x,re,im\n1.0,2.0,0.5\n2.0,1.0,0.0\n").unwrap();
        let v = t.eval(1.0);
        assert!((v - Complex64::new(2.0, 0.5)).norm() < 1e-12);
    }
}
