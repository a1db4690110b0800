//! Cusp domains, their logarithmic images and bounded-monomial cones.
//!
//! Two region shapes are supported:
//!
//! * `Ω_{k,l} = {|z1|^k < |z2|^l < 1}` (the generalized Hartogs triangle), whose
//!   logarithmic image is the open cone at the origin spanned by `(-1, 0)` and `(-l, -k)`;
//! * the cusp strip `{a < |z1^k / z2^l| < b, |z1|^m |z2|^n < e^{rn}}`, a half-strip in
//!   log coordinates receding along `(-l, -k)`.
//!
//! A monomial `z1^a z2^b` is bounded on a region iff `(a, b)` has a nonpositive inner
//! product with every recession direction of the log image (Cauchy estimates on the
//! polycircles over each log point give the converse). When bounded, its supremum over the
//! closure is attained at a vertex of the log image.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{ExponentPair, LaurentPolynomial};
use crate::scalar::Scalar;

/// A point of `C^2`.
pub type Point = [Complex64; 2];

/// `(log|z1|, log|z2|)`.
pub fn log_image(q: &Point) -> Result<(f64, f64)> {
    if q[0] == Complex64::new(0.0, 0.0) || q[1] == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(
            "the logarithmic image is only defined off the coordinate axes".into(),
        ));
    }
    Ok((q[0].norm().ln(), q[1].norm().ln()))
}

/// Parameters of the cusp strip `{a < |z1^k/z2^l| < b} ∩ {m log|z1| + n log|z2| < n r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripParams {
    pub lower: f64,
    pub upper: f64,
    pub m: u32,
    pub n: u32,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind {
    HartogsFull,
    StripOmega2(StripParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuspDomain {
    k: u32,
    l: u32,
    kind: DomainKind,
}

/// Result of the recession-cone boundedness test for a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessCertificate {
    pub bounded: bool,
    pub violations: Vec<ExponentPair>,
    /// `sum |c| sup|monomial|`; infinite when unbounded.
    pub sup_upper: f64,
}

/// Sampling controls. Depths are measured in `log|z2|` below the top of the section
/// (0 for `Ω_{k,l}`, the cut line for the strip).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    pub cusp_bias: f64,
    pub deep_floor: f64,
    pub deep_ceiling: f64,
    pub shallow_ceiling: f64,
    /// Width of the `log|z1|` window below the cusp boundary on `Ω_{k,l}`.
    pub section_span: f64,
}

impl SampleOptions {
    pub fn new(count: usize, seed: u64, cusp_bias: f64) -> Self {
        Self {
            count,
            seed,
            cusp_bias,
            deep_floor: -30.0,
            deep_ceiling: -3.0,
            shallow_ceiling: -1e-3,
            section_span: 16.0,
        }
    }
}

impl CuspDomain {
    pub fn hartogs(k: u32, l: u32) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidInput("k and l must be >= 1".into()));
        }
        Ok(Self {
            k,
            l,
            kind: DomainKind::HartogsFull,
        })
    }

    pub fn strip(k: u32, l: u32, params: StripParams) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidInput("k and l must be >= 1".into()));
        }
        if !(params.lower > 0.0 && params.lower < params.upper && params.upper.is_finite()) {
            return Err(Error::InvalidInput(
                "strip bounds must satisfy 0 < a < b < inf".into(),
            ));
        }
        if params.n == 0 || !params.r.is_finite() {
            return Err(Error::InvalidInput(
                "cut parameters need n >= 1 and finite r".into(),
            ));
        }
        Ok(Self {
            k,
            l,
            kind: DomainKind::StripOmega2(params),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn recession_generators(&self) -> Vec<(i64, i64)> {
        let cusp = (-(self.l as i64), -(self.k as i64));
        match self.kind {
            DomainKind::HartogsFull => vec![(-1, 0), cusp],
            DomainKind::StripOmega2(_) => vec![cusp],
        }
    }

    pub fn contains(&self, q: &Point) -> bool {
        let (k, l) = (self.k as f64, self.l as f64);
        let r2 = q[1].norm();
        match self.kind {
            DomainKind::HartogsFull => {
                if !(r2 > 0.0 && r2 < 1.0) || !q[0].is_finite() {
                    return false;
                }
                let r1 = q[0].norm();
                r1 == 0.0 || k * r1.ln() < l * r2.ln()
            }
            DomainKind::StripOmega2(s) => {
                let Ok((x, y)) = log_image(q) else {
                    return false;
                };
                let u = k * x - l * y;
                s.lower.ln() < u && u < s.upper.ln() && (s.m as f64) * x + (s.n as f64) * y < (s.n as f64) * s.r
            }
        }
    }

    pub fn monomial_bounded(&self, e: ExponentPair) -> bool {
        self.recession_generators()
            .iter()
            .all(|&(gx, gy)| e.a * gx + e.b * gy <= 0)
    }

    /// Vertices of the closed log image.
    fn vertices(&self) -> Vec<(f64, f64)> {
        match self.kind {
            DomainKind::HartogsFull => vec![(0.0, 0.0)],
            DomainKind::StripOmega2(s) => [s.lower.ln(), s.upper.ln()]
                .into_iter()
                .map(|u| self.strip_point(&s, u, 0.0))
                .collect(),
        }
    }

    /// The point of the strip with `k x - l y = u` lying `depth` below the cut in `y`.
    fn strip_point(&self, s: &StripParams, u: f64, depth: f64) -> (f64, f64) {
        let (k, l, m, n) = (self.k as f64, self.l as f64, s.m as f64, s.n as f64);
        let y_cut = (n * s.r * k - m * u) / (m * l + n * k);
        let y = y_cut + depth;
        ((u + l * y) / k, y)
    }

    /// Supremum of `|z1^a z2^b|` over the domain (infinite when unbounded).
    pub fn monomial_sup(&self, e: ExponentPair) -> f64 {
        if !self.monomial_bounded(e) {
            return f64::INFINITY;
        }
        self.vertices()
            .into_iter()
            .map(|(x, y)| (e.a as f64 * x + e.b as f64 * y).exp())
            .fold(0.0, f64::max)
    }

    pub fn poly_bounded<S: Scalar>(&self, f: &LaurentPolynomial<S>) -> BoundednessCertificate {
        let violations: Vec<_> = f.exponents().filter(|e| !self.monomial_bounded(*e)).collect();
        let bounded = violations.is_empty();
        let sup_upper = if bounded {
            f.terms().map(|(e, c)| c.modulus() * self.monomial_sup(*e)).sum()
        } else {
            f64::INFINITY
        };
        BoundednessCertificate {
            bounded,
            violations,
            sup_upper,
        }
    }

    /// Human-readable description of the bounded-monomial cone.
    pub fn cone_description(&self) -> String {
        let coef = |c: u32, v: &str| {
            if c == 1 {
                v.to_string()
            } else {
                format!("{c}{v}")
            }
        };
        let mixed = format!("{} + {} >= 0", coef(self.l, "a"), coef(self.k, "b"));
        match self.kind {
            DomainKind::HartogsFull => format!("a >= 0 and {mixed}"),
            DomainKind::StripOmega2(_) => mixed,
        }
    }

    pub fn sample(&self, count: usize, seed: u64, cusp_bias: f64) -> Vec<Point> {
        self.sample_with(&SampleOptions::new(count, seed, cusp_bias))
    }

    /// Deterministic samples. The first `n` points of a request for `n + j` points are the
    /// same as a request for `n`, and exactly `floor(n cusp_bias)` of them are deep.
    pub fn sample_with(&self, opts: &SampleOptions) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let bias = opts.cusp_bias.clamp(0.0, 1.0);
        let (k, l) = (self.k as f64, self.l as f64);
        let mut out = Vec::with_capacity(opts.count);
        for i in 0..opts.count {
            let deep = ((i + 1) as f64 * bias).floor() > (i as f64 * bias).floor();
            let (lo, hi) = if deep {
                (opts.deep_floor, opts.deep_ceiling)
            } else {
                (opts.deep_ceiling, opts.shallow_ceiling)
            };
            loop {
                let depth = rng.gen_range(lo..=hi);
                let (x, y) = match self.kind {
                    DomainKind::HartogsFull => {
                        let top = l / k * depth;
                        let t: f64 = rng.gen();
                        (top - opts.section_span * (1.0 - t), depth)
                    }
                    DomainKind::StripOmega2(s) => {
                        let u = rng.gen_range(s.lower.ln()..s.upper.ln());
                        self.strip_point(&s, u, depth)
                    }
                };
                let (t1, t2): (f64, f64) = (rng.gen(), rng.gen());
                let q = [
                    Complex64::from_polar(x.exp(), TAU * t1),
                    Complex64::from_polar(y.exp(), TAU * t2),
                ];
                if self.contains(&q) {
                    out.push(q);
                    break;
                }
            }
        }
        out
    }
}

/// A polyline in log coordinates with per-vertex strict-convexity markers.
///
/// The first vertex is the cusp end of the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct LogBoundary {
    vertices: Vec<(f64, f64)>,
    strict: Vec<bool>,
}

impl LogBoundary {
    /// Validates that the polyline turns consistently, i.e. bounds a convex region locally.
    pub fn new(vertices: Vec<(f64, f64)>, strict: Vec<bool>) -> Result<Self> {
        if vertices.len() < 2 || vertices.len() != strict.len() {
            return Err(Error::InvalidInput(
                "a boundary needs at least two vertices and one flag per vertex".into(),
            ));
        }
        if vertices.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidInput("non-finite boundary vertex".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated consecutive vertex".into()));
        }
        let (mut left, mut right) = (false, false);
        for w in vertices.windows(3) {
            let e1 = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let e2 = (w[2].0 - w[1].0, w[2].1 - w[1].1);
            let turn = cross(e1, e2);
            let scale = (e1.0.hypot(e1.1) * e2.0.hypot(e2.1)).max(f64::MIN_POSITIVE);
            if turn > 1e-12 * scale {
                left = true;
            } else if turn < -1e-12 * scale {
                right = true;
            }
        }
        if left && right {
            return Err(Error::InvalidInput(
                "polyline is not the boundary of a convex region".into(),
            ));
        }
        Ok(Self { vertices, strict })
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn strict(&self) -> &[bool] {
        &self.strict
    }

    /// Parses `x,y,strict` lines (`strict` is 0 or 1). Blank lines, `#` comments and an
    /// `x,y,strict` header are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut strict = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.eq_ignore_ascii_case("x,y,strict") {
                continue;
            }
            let bad = || Error::InvalidInput(format!("line {}: expected x,y,strict", lineno + 1));
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [x, y, s] = fields[..] else {
                return Err(bad());
            };
            let x: f64 = x.parse().map_err(|_| bad())?;
            let y: f64 = y.parse().map_err(|_| bad())?;
            let s = match s {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            };
            vertices.push((x, y));
            strict.push(s);
        }
        Self::new(vertices, strict)
    }

    pub fn to_csv(&self) -> String {
        self.vertices
            .iter()
            .zip(&self.strict)
            .map(|((x, y), s)| format!("{x},{y},{}\n", u8::from(*s)))
            .collect()
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|(x, y)| (x + dx, y + dy)).collect(),
            strict: self.strict.clone(),
        }
    }
}

/// The separating line `y = -(m/n) x + r` with its strict-convexity margin `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitLine {
    pub m: u32,
    pub n: u32,
    pub r: f64,
    pub delta: f64,
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// The unique point where the ray from `lp` in direction `(l, k)` meets the polyline.
pub fn ray_intersection(boundary: &LogBoundary, cusp: (u32, u32), lp: (f64, f64)) -> Result<(f64, f64)> {
    let dir = (cusp.1 as f64, cusp.0 as f64);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    for w in boundary.vertices.windows(2) {
        let seg = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let denom = cross(dir, seg);
        if denom.abs() <= 1e-15 * dir.0.hypot(dir.1) * seg.0.hypot(seg.1) {
            continue;
        }
        let off = (w[0].0 - lp.0, w[0].1 - lp.1);
        let t = cross(off, seg) / denom;
        let u = cross(off, dir) / denom;
        if t >= 0.0 && (-1e-12..=1.0 + 1e-12).contains(&u) {
            let hit = (lp.0 + t * dir.0, lp.1 + t * dir.1);
            let scale = 1.0 + hit.0.abs().max(hit.1.abs());
            if !hits
                .iter()
                .any(|h| (h.0 - hit.0).abs() <= 1e-9 * scale && (h.1 - hit.1).abs() <= 1e-9 * scale)
            {
                hits.push(hit);
            }
        }
    }
    match hits.len() {
        1 => Ok(hits[0]),
        0 => Err(Error::InvalidInput("the cusp-direction ray misses the boundary".into())),
        _ => Err(Error::InvalidInput(
            "the cusp-direction ray meets the boundary more than once".into(),
        )),
    }
}

const MAX_SLOPE_SUM: u32 = 128;

/// Slopes `(m, n)` with `m >= 0`, `n >= 1`, `gcd(m, n) = 1`, by increasing `m + n`.
pub fn stern_brocot_slopes(max_sum: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=max_sum).flat_map(|s| (0..s).map(move |m| (m, s - m)).filter(|&(m, n)| m.gcd(&n) == 1))
}

/// Chooses a rational line `y = -(m/n) x + r` that separates the ray hit `A` (above) from
/// the cusp end of the boundary (below), such that every boundary segment crossed by the
/// lines with offsets in `[r - delta, r]` has strictly convex endpoints.
///
/// For each slope the admissible offsets are `(h(cusp end), h(A))` minus the offset ranges
/// of non-strict segments, where `h(v) = v.y + (m/n) v.x`. The widest free window
/// `(lo, lo + W)` gives `r = lo + 3W/4` and `delta = W/2`.
pub fn split_line(boundary: &LogBoundary, cusp: (u32, u32), lp: (f64, f64)) -> Result<SplitLine> {
    if cusp.0 == 0 || cusp.1 == 0 {
        return Err(Error::InvalidInput("cusp slope k/l needs k, l >= 1".into()));
    }
    let a = ray_intersection(boundary, cusp, lp)?;
    let vs = &boundary.vertices;
    let extent = vs
        .iter()
        .chain(std::iter::once(&a))
        .fold(1.0f64, |acc, v| acc.max(v.0.abs()).max(v.1.abs()));
    for (m, n) in stern_brocot_slopes(MAX_SLOPE_SUM) {
        let ratio = m as f64 / n as f64;
        let h = |v: &(f64, f64)| v.1 + ratio * v.0;
        let (lo0, hi0) = (h(&vs[0]), h(&a));
        let eps = 1e-12 * extent * (1.0 + ratio);
        if hi0 - lo0 <= eps {
            continue;
        }
        let mut bad: Vec<(f64, f64)> = vs
            .windows(2)
            .zip(boundary.strict.windows(2))
            .filter(|(_, s)| !(s[0] && s[1]))
            .map(|(w, _)| {
                let (p, q) = (h(&w[0]), h(&w[1]));
                (p.min(q), p.max(q))
            })
            .collect();
        bad.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut best: Option<(f64, f64)> = None;
        let mut cursor = lo0;
        let consider = |lo: f64, hi: f64, best: &mut Option<(f64, f64)>| {
            let (lo, hi) = (lo.max(lo0), hi.min(hi0));
            if hi - lo > eps && best.is_none_or(|(blo, bhi)| hi - lo >= bhi - blo) {
                *best = Some((lo, hi));
            }
        };
        for (blo, bhi) in bad {
            if blo > cursor {
                consider(cursor, blo, &mut best);
            }
            cursor = cursor.max(bhi);
        }
        consider(cursor, hi0, &mut best);
        if let Some((lo, hi)) = best {
            let width = hi - lo;
            return Ok(SplitLine {
                m,
                n,
                r: lo + 0.75 * width,
                delta: 0.5 * width,
            });
        }
    }
    Err(Error::Infeasible(
        "no rational slope admits a strictly convex offset window below the ray hit".into(),
    ))
}
