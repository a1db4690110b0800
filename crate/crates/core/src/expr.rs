//! Text form of polynomials, points and verification reports.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff ('*'? factor)* | factor ('*'? factor)*
//! factor := ('z1' | 'z2') ('^' '-'? digits)?
//! coeff  := number | '(' '-'? number (('+' | '-') number 'i')? ')'
//! number := digits ('.' digits)? ('/' digits)?
//! ```
//!
//! Whitespace between tokens is ignored. Every string has at most one parse, and
//! [`format_poly`] emits the canonical string of a polynomial.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::domain::Point;
use crate::error::{fmt_c64, Error, Result};
use crate::laurent::{ExponentPair, LaurentPolynomial};
use crate::scalar::Scalar;
use crate::solver::{GleasonSolution, SolveMode};
use crate::verify::VerificationReport;

/// Largest accepted exponent magnitude.
pub const EXPONENT_LIMIT: i64 = 1_000_000;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("found {c:?}"),
            None => "found end of input".into(),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        &self.text[start..start + len]
    }

    fn number(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.digits().is_empty() {
            let found = self.found();
            return self.error(format!("expected a number, {found}"));
        }
        for sep in ['.', '/'] {
            if self.text[self.pos..].starts_with(sep) {
                self.pos += 1;
                if self.digits().is_empty() {
                    return self.error(format!("expected digits after {sep:?}"));
                }
            }
        }
        Ok(&self.text[start..self.pos])
    }

    fn scalar<S: Scalar>(&self, re: &str, im: &str, offset: usize) -> Result<S> {
        S::from_literals(re, im).map_err(|err| Error::Syntax {
            offset,
            message: err.to_string(),
        })
    }

    fn coeff<S: Scalar>(&mut self) -> Result<S> {
        let start = self.pos;
        if !self.eat('(') {
            let text = self.number()?;
            return self.scalar(text, "0", start);
        }
        let neg = self.eat('-');
        let re = self.number()?;
        let re = if neg { format!("-{re}") } else { re.to_string() };
        let im = match self.peek() {
            Some(sign @ ('+' | '-')) => {
                self.pos += 1;
                let im = self.number()?;
                if !self.eat('i') {
                    let found = self.found();
                    return self.error(format!("expected 'i', {found}"));
                }
                if sign == '-' {
                    format!("-{im}")
                } else {
                    im.to_string()
                }
            }
            _ => "0".to_string(),
        };
        if !self.eat(')') {
            let found = self.found();
            return self.error(format!("expected ')', {found}"));
        }
        self.scalar(&re, &im, start)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat('-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            let found = self.found();
            return self.error(format!("expected an integer exponent, {found}"));
        }
        let value = &self.text[start..self.pos];
        let magnitude = digits
            .parse::<i64>()
            .ok()
            .filter(|v| *v <= EXPONENT_LIMIT)
            .ok_or_else(|| Error::ExponentOverflow {
                offset: start,
                value: value.split_whitespace().collect(),
            })?;
        Ok(if neg { -magnitude } else { magnitude })
    }

    /// `Some(exponent)` when a factor starts here.
    fn factor(&mut self) -> Result<Option<ExponentPair>> {
        if self.peek() != Some('z') {
            return Ok(None);
        }
        let rest = &self.text[self.pos..];
        let var = if rest.starts_with("z1") {
            0
        } else if rest.starts_with("z2") {
            1
        } else {
            self.pos += 1;
            let found = self.found();
            return self.error(format!("expected '1' or '2' after 'z', {found}"));
        };
        self.pos += 2;
        let e = if self.eat('^') { self.exponent()? } else { 1 };
        Ok(Some(if var == 0 {
            ExponentPair::new(e, 0)
        } else {
            ExponentPair::new(0, e)
        }))
    }

    fn term<S: Scalar>(&mut self, negate: bool) -> Result<(ExponentPair, S)> {
        let mut coeff = S::one();
        let mut exponent = ExponentPair::ZERO;
        match self.peek() {
            Some('z') => {}
            Some(c) if c == '(' || c.is_ascii_digit() => coeff = self.coeff()?,
            _ => {
                let found = self.found();
                return self.error(format!("expected a term, {found}"));
            }
        }
        loop {
            let star = self.eat('*');
            match self.factor()? {
                Some(e) => exponent = exponent + e,
                None if star => {
                    let found = self.found();
                    return self.error(format!("expected 'z1' or 'z2' after '*', {found}"));
                }
                None => break,
            }
        }
        Ok((exponent, if negate { -coeff } else { coeff }))
    }
}

/// Parses the polynomial grammar; errors carry the byte offset of the failure.
pub fn parse_poly<S: Scalar>(text: &str) -> Result<LaurentPolynomial<S>> {
    let mut parser = Parser { text, pos: 0 };
    let mut terms = Vec::new();
    let mut negate = if parser.eat('-') {
        true
    } else {
        parser.eat('+');
        false
    };
    loop {
        terms.push(parser.term::<S>(negate)?);
        match parser.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(_) => {
                let found = parser.found();
                return parser.error(format!("expected '+', '-' or end of input, {found}"));
            }
        }
        parser.pos += 1;
    }
    Ok(LaurentPolynomial::from_terms(terms))
}

fn monomial_text(e: ExponentPair) -> String {
    let mut parts = Vec::with_capacity(2);
    for (name, power) in [("z1", e.a), ("z2", e.b)] {
        match power {
            0 => {}
            1 => parts.push(name.to_string()),
            p => parts.push(format!("{name}^{p}")),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing lexicographic exponent order, unit coefficients omitted.
pub fn format_poly<S: Scalar>(f: &LaurentPolynomial<S>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in f.terms().rev().enumerate() {
        let mono = monomial_text(*e);
        let (re, im) = c.literal_parts();
        let (negative, coeff) = if im == "0" {
            match re.strip_prefix('-') {
                Some(mag) => (true, mag.to_string()),
                None => (false, re),
            }
        } else if let Some(mag) = im.strip_prefix('-') {
            (false, format!("({re}-{mag}i)"))
        } else {
            (false, format!("({re}+{im}i)"))
        };
        match (idx == 0, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mono.is_empty() {
            out.push_str(&coeff);
        } else {
            if coeff != "1" {
                out.push_str(&coeff);
            }
            out.push_str(&mono);
        }
    }
    out
}

/// Parses `re`, `re+imi` or `re-imi` (no spaces), with `re` and `im` in the number grammar.
pub fn parse_complex<S: Scalar>(text: &str) -> Result<S> {
    let bad = |message: &str| Error::Literal {
        text: text.to_string(),
        message: message.to_string(),
    };
    let Some(body) = text.strip_suffix('i') else {
        return S::from_literals(text, "0");
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(idx, _)| idx)
        .last()
        .ok_or_else(|| bad("expected re+imi"))?;
    let (re, im) = body.split_at(split);
    let im = im.strip_prefix('+').unwrap_or(im);
    S::from_literals(re, im)
}

pub fn parse_c64(text: &str) -> Result<Complex64> {
    parse_complex::<Complex64>(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Plain,
    #[default]
    Machine,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(ReportFormat::Plain),
            "machine" => Ok(ReportFormat::Machine),
            other => Err(Error::InvalidInput(format!("unknown output format {other:?}"))),
        }
    }
}

/// The flat, numeric content of a report, as written in machine format.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub residual_max: f64,
    pub residual_argmax: Option<Point>,
    pub bounded_f1: bool,
    pub bounded_f2: bool,
    pub cone_violations: Vec<ExponentPair>,
    pub sup_f_upper: f64,
    pub sup_f1_sampled: f64,
    pub sup_f2_sampled: f64,
    pub bound_rhs: Option<f64>,
    pub mode: SolveMode,
    pub k: u32,
    pub l: u32,
    pub p1: Complex64,
    pub p2: Complex64,
    pub residual_coeff_max: f64,
    pub residual_pointwise_max: f64,
    pub symbolic_residual_zero: bool,
    pub samples_used: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ReportRecord {
    pub fn new(
        report: &VerificationReport,
        mode: SolveMode,
        k: u32,
        l: u32,
        p: (Complex64, Complex64),
    ) -> Self {
        Self {
            residual_max: report.residual_max,
            residual_argmax: report.residual_argmax,
            bounded_f1: report.bounded_f1,
            bounded_f2: report.bounded_f2,
            cone_violations: report.cone_violations.clone(),
            sup_f_upper: report.sup_f_upper,
            sup_f1_sampled: report.sup_f1_sampled,
            sup_f2_sampled: report.sup_f2_sampled,
            bound_rhs: report.bound_rhs,
            mode,
            k,
            l,
            p1: p.0,
            p2: p.1,
            residual_coeff_max: report.residual_coeff_max,
            residual_pointwise_max: report.residual_pointwise_max,
            symbolic_residual_zero: report.symbolic_residual_zero,
            samples_used: report.samples_used,
            seed: report.seed,
            tolerance: report.tolerance,
            passed: report.passed(),
        }
    }

    pub fn from_solution<S: Scalar>(solution: &GleasonSolution<S>) -> Self {
        Self::new(
            &solution.report,
            solution.mode,
            solution.k,
            solution.l,
            solution.p,
        )
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{key}={value}");
        };
        line("residual_max", self.residual_max.to_string());
        line(
            "residual_argmax",
            match self.residual_argmax {
                Some(q) => format!("{};{}", fmt_c64(q[0]), fmt_c64(q[1])),
                None => "none".into(),
            },
        );
        line("bounded_f1", self.bounded_f1.to_string());
        line("bounded_f2", self.bounded_f2.to_string());
        line("cone_violations", violations_text(&self.cone_violations));
        line("sup_f_upper", self.sup_f_upper.to_string());
        line("sup_f1_sampled", self.sup_f1_sampled.to_string());
        line("sup_f2_sampled", self.sup_f2_sampled.to_string());
        if let Some(b) = self.bound_rhs {
            line("bound_rhs", b.to_string());
        }
        line("mode", self.mode.to_string());
        line("k", self.k.to_string());
        line("l", self.l.to_string());
        line("p1", fmt_c64(self.p1));
        line("p2", fmt_c64(self.p2));
        line("residual_coeff_max", self.residual_coeff_max.to_string());
        line("residual_pointwise_max", self.residual_pointwise_max.to_string());
        line("symbolic_residual_zero", self.symbolic_residual_zero.to_string());
        line("samples_used", self.samples_used.to_string());
        line("seed", self.seed.to_string());
        line("tolerance", self.tolerance.to_string());
        line("passed", self.passed.to_string());
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "mode {} on k = {}, l = {} at p = ({}, {})",
            self.mode,
            self.k,
            self.l,
            fmt_c64(self.p1),
            fmt_c64(self.p2)
        );
        let _ = writeln!(
            out,
            "identity: {}; largest residual coefficient {}",
            if self.symbolic_residual_zero {
                "symbolic residual is zero"
            } else {
                "symbolic residual is nonzero"
            },
            self.residual_coeff_max
        );
        let _ = write!(
            out,
            "sampled residual: max {} over {} points (seed {})",
            self.residual_max, self.samples_used, self.seed
        );
        if let Some(q) = self.residual_argmax {
            let _ = write!(out, " at ({}, {})", fmt_c64(q[0]), fmt_c64(q[1]));
        }
        let _ = writeln!(out, ", pointwise {}", self.residual_pointwise_max);
        let _ = writeln!(
            out,
            "boundedness: f1 {}, f2 {}, violations {}",
            yes_no(self.bounded_f1),
            yes_no(self.bounded_f2),
            violations_text(&self.cone_violations)
        );
        let _ = writeln!(
            out,
            "sup |f| <= {} (coefficient sum); sampled sup |f1| = {}, sup |f2| = {}",
            self.sup_f_upper, self.sup_f1_sampled, self.sup_f2_sampled
        );
        if let Some(b) = self.bound_rhs {
            let _ = writeln!(
                out,
                "bound: sampled sup |f1| = {} <= {} : {}",
                self.sup_f1_sampled,
                b,
                yes_no(self.sup_f1_sampled <= b)
            );
        }
        let _ = writeln!(
            out,
            "verdict: {} (tolerance {})",
            if self.passed { "passed" } else { "FAILED" },
            self.tolerance
        );
        out
    }
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "ok"
    } else {
        "no"
    }
}

fn violations_text(list: &[ExponentPair]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn emit_report<S: Scalar>(solution: &GleasonSolution<S>, format: ReportFormat) -> String {
    let record = ReportRecord::from_solution(solution);
    match format {
        ReportFormat::Plain => record.to_plain(),
        ReportFormat::Machine => record.to_machine(),
    }
}

/// Inverse of [`ReportRecord::to_machine`].
pub fn parse_machine_report(text: &str) -> Result<ReportRecord> {
    let mut map = std::collections::HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("report line {} has no '='", idx + 1))
        })?;
        map.insert(key.trim(), value.trim());
    }
    let get = |key: &str| {
        map.get(key)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("report is missing {key}")))
    };
    fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
        value
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad value for {key}: {value:?}")))
    }
    let f = |key: &str| -> Result<f64> { num(key, get(key)?) };
    let b = |key: &str| -> Result<bool> { num(key, get(key)?) };
    let argmax = match get("residual_argmax")? {
        "none" => None,
        text => {
            let (a, c) = text
                .split_once(';')
                .ok_or_else(|| Error::InvalidInput("bad residual_argmax".into()))?;
            Some([parse_c64(a)?, parse_c64(c)?])
        }
    };
    let violations = match get("cone_violations")? {
        "none" => Vec::new(),
        text => text
            .split(';')
            .map(parse_exponent_pair)
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(ReportRecord {
        residual_max: f("residual_max")?,
        residual_argmax: argmax,
        bounded_f1: b("bounded_f1")?,
        bounded_f2: b("bounded_f2")?,
        cone_violations: violations,
        sup_f_upper: f("sup_f_upper")?,
        sup_f1_sampled: f("sup_f1_sampled")?,
        sup_f2_sampled: f("sup_f2_sampled")?,
        bound_rhs: map.get("bound_rhs").map(|v| num("bound_rhs", v)).transpose()?,
        mode: get("mode")?.parse()?,
        k: num("k", get("k")?)?,
        l: num("l", get("l")?)?,
        p1: parse_c64(get("p1")?)?,
        p2: parse_c64(get("p2")?)?,
        residual_coeff_max: f("residual_coeff_max")?,
        residual_pointwise_max: f("residual_pointwise_max")?,
        symbolic_residual_zero: b("symbolic_residual_zero")?,
        samples_used: num("samples_used", get("samples_used")?)?,
        seed: num("seed", get("seed")?)?,
        tolerance: f("tolerance")?,
        passed: b("passed")?,
    })
}

fn parse_exponent_pair(text: &str) -> Result<ExponentPair> {
    let bad = || Error::InvalidInput(format!("bad exponent pair {text:?}"));
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok(ExponentPair::new(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}
