//! Closed-form coefficient expressions in the deformation parameter `t`.
//!
//! Wall tables are stored symbolically so a row can be evaluated at any
//! admissible `t`, rescaled, and limit-extracted as `t → 0±` without ever
//! differencing floats near the collapse. The expression language is tiny on
//! purpose: rational constants, `√2`-rational constants, `t`, `|t|`, `t²`,
//! `√(1+t²)`, `√(1−t²)`, closed under `+`, `−`, `×`. That set covers every
//! shipped table; anything else is rejected at parse time.
//!
//! One-sided limits are computed on exact truncated power series in
//! `s = |t|`: every atom is analytic in `s` on a right neighborhood of 0
//! with coefficients in ℚ(√2), so leading-order extraction is exact. A
//! numeric evaluation at `t ∈ {1e-3, 1e-4, 1e-5}` guards the symbolic
//! answer; it is a cross-check, not the definition.

use crate::forms::DualHalfSpace;
use crate::scalar::{Exact, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncation order for the exact series arithmetic. The shipped expressions
/// are polynomials of degree ≤ 4 in the atoms, so any cancellation is
/// resolved well before this order.
pub const SERIES_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamError {
    OutsideDomain { t: f64, domain: Domain },
    SideNotInDomain { domain: Domain },
    NoProjectiveLimit(String),
    Parse(String),
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::OutsideDomain { t, domain } => {
                write!(f, "parameter {t} outside the family domain {domain}")
            }
            ParamError::SideNotInDomain { domain } => {
                write!(f, "requested limit side is not inside the family domain {domain}")
            }
            ParamError::NoProjectiveLimit(msg) => write!(f, "no projective limit: {msg}"),
            ParamError::Parse(msg) => write!(f, "expression parse error: {msg}"),
        }
    }
}

impl std::error::Error for ParamError {}

/// Which side of `t = 0` a one-sided limit approaches from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Pos,
    Neg,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Pos => 1.0,
            Side::Neg => -1.0,
        }
    }
}

/// Open/half-open interval of admissible parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub lo_inclusive: bool,
    pub hi: f64,
    pub hi_inclusive: bool,
}

impl Domain {
    pub fn open(lo: f64, hi: f64) -> Self {
        Domain {
            lo,
            lo_inclusive: false,
            hi,
            hi_inclusive: false,
        }
    }

    pub fn half_open(lo: f64, hi: f64) -> Self {
        Domain {
            lo,
            lo_inclusive: false,
            hi,
            hi_inclusive: true,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_inclusive { t >= self.lo } else { t > self.lo };
        let below = if self.hi_inclusive { t <= self.hi } else { t < self.hi };
        above && below
    }

    /// Does the interval contain a one-sided punctured neighborhood of 0?
    pub fn touches_side(&self, side: Side) -> bool {
        match side {
            Side::Pos => self.contains(1e-6),
            Side::Neg => self.contains(-1e-6),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_inclusive { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_inclusive { ']' } else { ')' }
        )
    }
}

/// The permitted atoms.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamAtom {
    /// A constant in ℚ(√2); the parser only produces rationals and
    /// `√2`-rationals, matching the table entries.
    Const(Exact),
    T,
    AbsT,
    TSquared,
    SqrtOnePlusT2,
    SqrtOneMinusT2,
}

/// Expression tree over [`ParamAtom`], closed under `+`, `−`, `×`.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamScalar {
    Atom(ParamAtom),
    Add(Box<ParamScalar>, Box<ParamScalar>),
    Sub(Box<ParamScalar>, Box<ParamScalar>),
    Mul(Box<ParamScalar>, Box<ParamScalar>),
    Neg(Box<ParamScalar>),
}

impl ParamScalar {
    pub fn constant(c: Exact) -> Self {
        ParamScalar::Atom(ParamAtom::Const(c))
    }

    pub fn integer(i: i64) -> Self {
        Self::constant(Exact::integer(i))
    }

    pub fn t() -> Self {
        ParamScalar::Atom(ParamAtom::T)
    }

    pub fn abs_t() -> Self {
        ParamScalar::Atom(ParamAtom::AbsT)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        match self {
            ParamScalar::Atom(a) => match a {
                ParamAtom::Const(c) => c.to_f64(),
                ParamAtom::T => t,
                ParamAtom::AbsT => t.abs(),
                ParamAtom::TSquared => t * t,
                ParamAtom::SqrtOnePlusT2 => (1.0 + t * t).sqrt(),
                ParamAtom::SqrtOneMinusT2 => (1.0 - t * t).sqrt(),
            },
            ParamScalar::Add(x, y) => x.eval_f64(t) + y.eval_f64(t),
            ParamScalar::Sub(x, y) => x.eval_f64(t) - y.eval_f64(t),
            ParamScalar::Mul(x, y) => x.eval_f64(t) * y.eval_f64(t),
            ParamScalar::Neg(x) => -x.eval_f64(t),
        }
    }

    /// Exact evaluation at a rational parameter. Returns `None` when a
    /// square-root atom does not land in ℚ(√2) at this `t`.
    pub fn eval_exact(&self, t: Rational) -> Option<Exact> {
        match self {
            ParamScalar::Atom(a) => match a {
                ParamAtom::Const(c) => Some(*c),
                ParamAtom::T => Some(Exact::rational(t)),
                ParamAtom::AbsT => Some(Exact::rational(t.abs())),
                ParamAtom::TSquared => Some(Exact::rational(t * t)),
                ParamAtom::SqrtOnePlusT2 => {
                    Exact::rational(Rational::ONE + t * t).sqrt_exact()
                }
                ParamAtom::SqrtOneMinusT2 => {
                    Exact::rational(Rational::ONE - t * t).sqrt_exact()
                }
            },
            ParamScalar::Add(x, y) => Some(x.eval_exact(t)? + y.eval_exact(t)?),
            ParamScalar::Sub(x, y) => Some(x.eval_exact(t)? - y.eval_exact(t)?),
            ParamScalar::Mul(x, y) => Some(x.eval_exact(t)? * y.eval_exact(t)?),
            ParamScalar::Neg(x) => Some(-x.eval_exact(t)?),
        }
    }

    /// Exact truncated power series in `s = |t|` on the given side.
    pub fn series(&self, side: Side) -> Series {
        match self {
            ParamScalar::Atom(a) => match a {
                ParamAtom::Const(c) => Series::constant(*c),
                ParamAtom::T => {
                    let sigma = match side {
                        Side::Pos => Exact::integer(1),
                        Side::Neg => Exact::integer(-1),
                    };
                    Series::monomial(sigma, 1)
                }
                ParamAtom::AbsT => Series::monomial(Exact::integer(1), 1),
                ParamAtom::TSquared => Series::monomial(Exact::integer(1), 2),
                ParamAtom::SqrtOnePlusT2 => Series::sqrt_one_plus(false),
                ParamAtom::SqrtOneMinusT2 => Series::sqrt_one_plus(true),
            },
            ParamScalar::Add(x, y) => x.series(side).add(&y.series(side)),
            ParamScalar::Sub(x, y) => x.series(side).sub(&y.series(side)),
            ParamScalar::Mul(x, y) => x.series(side).mul(&y.series(side)),
            ParamScalar::Neg(x) => x.series(side).neg(),
        }
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(self, o: ParamScalar) -> ParamScalar {
        ParamScalar::Add(Box::new(self), Box::new(o))
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(self, o: ParamScalar) -> ParamScalar {
        ParamScalar::Sub(Box::new(self), Box::new(o))
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, o: ParamScalar) -> ParamScalar {
        ParamScalar::Mul(Box::new(self), Box::new(o))
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar::Neg(Box::new(self))
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamScalar::Atom(a) => match a {
                ParamAtom::Const(c) => {
                    if c.a.is_zero() && c.b == Rational::ONE {
                        write!(f, "sqrt2")
                    } else if c.b.is_zero() {
                        write!(f, "{}", c.a)
                    } else {
                        write!(f, "* sqrt2 {}", c.b)
                    }
                }
                ParamAtom::T => write!(f, "t"),
                ParamAtom::AbsT => write!(f, "|t|"),
                ParamAtom::TSquared => write!(f, "t^2"),
                ParamAtom::SqrtOnePlusT2 => write!(f, "sqrt(1+t^2)"),
                ParamAtom::SqrtOneMinusT2 => write!(f, "sqrt(1-t^2)"),
            },
            ParamScalar::Add(x, y) => write!(f, "+ {x} {y}"),
            ParamScalar::Sub(x, y) => write!(f, "- {x} {y}"),
            ParamScalar::Mul(x, y) => write!(f, "* {x} {y}"),
            ParamScalar::Neg(x) => write!(f, "neg {x}"),
        }
    }
}

/// Exact truncated power series in `s`, coefficients in ℚ(√2).
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Exact>, // index = degree, length SERIES_ORDER + 1
}

impl Series {
    pub fn zero() -> Self {
        Series {
            coeffs: vec![Exact::integer(0); SERIES_ORDER + 1],
        }
    }

    pub fn constant(c: Exact) -> Self {
        let mut s = Self::zero();
        s.coeffs[0] = c;
        s
    }

    pub fn monomial(c: Exact, degree: usize) -> Self {
        let mut s = Self::zero();
        if degree <= SERIES_ORDER {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Binomial series of `√(1 ± s²)`.
    fn sqrt_one_plus(minus: bool) -> Self {
        let mut s = Self::zero();
        // c_k = binomial(1/2, k); the series is Σ c_k u^k with u = ±s².
        let mut c = Rational::ONE;
        let mut k = 0i64;
        loop {
            let deg = 2 * k as usize;
            if deg > SERIES_ORDER {
                break;
            }
            let signed = if minus && k % 2 == 1 { -c } else { c };
            s.coeffs[deg] = Exact::rational(signed);
            // c_{k+1} = c_k · (1/2 − k) / (k + 1)
            c = c * (Rational::new(1, 2) - Rational::from_int(k)) / Rational::from_int(k + 1);
            k += 1;
        }
        s
    }

    pub fn add(&self, o: &Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| -*a).collect(),
        }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let mut out = Series::zero();
        for i in 0..=SERIES_ORDER {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(SERIES_ORDER - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j] + self.coeffs[i] * o.coeffs[j];
            }
        }
        out
    }

    /// Lowest-degree nonzero term, if any survives truncation.
    pub fn leading(&self) -> Option<(usize, Exact)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, *c))
    }

    pub fn coeff(&self, degree: usize) -> Exact {
        self.coeffs
            .get(degree)
            .copied()
            .unwrap_or_else(|| Exact::integer(0))
    }
}

/// A one-wall family: coefficient expressions, validity interval, label.
#[derive(Debug, Clone)]
pub struct HalfSpaceFamily {
    pub label: String,
    pub coeffs: Vec<ParamScalar>,
    pub domain: Domain,
}

/// Which rescaling acts on the dual coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleKind {
    /// Zoom at the basepoint: divides the first dual coordinate by `|t|`
    /// (projectively, it stretches all the others).
    Gamma,
    /// Fiber rescaling: multiplies the last dual coordinate by `|t|`.
    Eta,
}

/// Evaluate the wall at `t`, canonicalized.
pub fn family_eval(f: &HalfSpaceFamily, t: f64) -> Result<DualHalfSpace<f64>, ParamError> {
    Ok(family_eval_raw(f, t)?.canonical())
}

/// Evaluate without canonicalization (the representative written in the
/// data file).
pub fn family_eval_raw(f: &HalfSpaceFamily, t: f64) -> Result<DualHalfSpace<f64>, ParamError> {
    if !f.domain.contains(t) {
        return Err(ParamError::OutsideDomain { t, domain: f.domain });
    }
    let coeffs: Vec<f64> = f.coeffs.iter().map(|c| c.eval_f64(t)).collect();
    Ok(DualHalfSpace::new(coeffs))
}

/// Exact evaluation at rational `t`; `None` if a radical leaves ℚ(√2).
pub fn family_eval_exact(
    f: &HalfSpaceFamily,
    t: Rational,
) -> Result<Option<DualHalfSpace<Exact>>, ParamError> {
    if !f.domain.contains(t.to_f64()) {
        return Err(ParamError::OutsideDomain {
            t: t.to_f64(),
            domain: f.domain,
        });
    }
    let mut coeffs = Vec::with_capacity(f.coeffs.len());
    for c in &f.coeffs {
        match c.eval_exact(t) {
            Some(v) => coeffs.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(DualHalfSpace::new(coeffs)))
}

/// The dual action of the rescaling on the evaluated wall at `t ≠ 0`.
pub fn dual_rescale(
    f: &HalfSpaceFamily,
    kind: RescaleKind,
    t: f64,
) -> Result<DualHalfSpace<f64>, ParamError> {
    if t == 0.0 {
        return Err(ParamError::NoProjectiveLimit(
            "dual_rescale is undefined at t = 0; use rescaled_limit".into(),
        ));
    }
    let raw = family_eval_raw(f, t)?;
    let mut coeffs = raw.coeffs().to_vec();
    match kind {
        RescaleKind::Gamma => coeffs[0] /= t.abs(),
        RescaleKind::Eta => {
            let last = coeffs.len() - 1;
            coeffs[last] *= t.abs();
        }
    }
    Ok(DualHalfSpace::new(coeffs).canonical())
}

/// A computed one-sided limit of the rescaled wall.
#[derive(Debug, Clone)]
pub struct RescaledLimit {
    /// Exact canonical representative of the limit.
    pub exact: Vec<Exact>,
    /// The same limit as floats.
    pub wall: DualHalfSpace<f64>,
}

/// One-sided limit of `dual_rescale(f, kind, t)` as `t → 0` from `side`.
///
/// The limit is extracted symbolically: each coordinate is expanded as an
/// exact series in `s = |t|`, the rescaling shifts the valuation of the
/// affected coordinate by ∓1, and the coefficient vector of the minimal
/// total valuation is the projective limit. Numeric evaluations at three
/// small parameters must agree with the symbolic answer within `1e-6`.
pub fn rescaled_limit(
    f: &HalfSpaceFamily,
    kind: RescaleKind,
    side: Side,
) -> Result<RescaledLimit, ParamError> {
    if !f.domain.touches_side(side) {
        return Err(ParamError::SideNotInDomain { domain: f.domain });
    }
    let n = f.coeffs.len();
    let shift = |i: usize| -> i64 {
        match kind {
            RescaleKind::Gamma if i == 0 => -1,
            RescaleKind::Eta if i == n - 1 => 1,
            _ => 0,
        }
    };
    let series: Vec<Series> = f.coeffs.iter().map(|c| c.series(side)).collect();
    let mut min_val: Option<i64> = None;
    let mut leads: Vec<Option<(i64, Exact)>> = Vec::with_capacity(n);
    for (i, s) in series.iter().enumerate() {
        match s.leading() {
            Some((d, c)) => {
                let v = d as i64 + shift(i);
                min_val = Some(min_val.map_or(v, |m: i64| m.min(v)));
                leads.push(Some((v, c)));
            }
            None => leads.push(None),
        }
    }
    let Some(m) = min_val else {
        return Err(ParamError::NoProjectiveLimit(
            "all coefficients vanish identically".into(),
        ));
    };
    let exact: Vec<Exact> = leads
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Some((v, c)) if *v == m => *c,
            // A deeper term could still contribute at valuation m only if
            // the leading one did, so anything else is genuinely zero.
            _ => {
                let d = m - shift(i);
                if d >= 0 {
                    series[i].coeff(d as usize)
                } else {
                    Exact::integer(0)
                }
            }
        })
        .collect();
    if exact.iter().all(|c| c.is_zero()) {
        return Err(ParamError::NoProjectiveLimit(
            "leading coefficient vector vanished".into(),
        ));
    }
    let canonical = canonical_exact(&exact);
    let limit_f64 = DualHalfSpace::new(canonical.iter().map(|c| c.to_f64()).collect());

    // Numeric guard against the symbolic extraction.
    for &tk in &[1e-3, 1e-4, 1e-5] {
        let t = side.sign() * tk;
        let numeric = dual_rescale(f, kind, t)?;
        let dev = numeric
            .coeffs()
            .iter()
            .zip(limit_f64.canonical().coeffs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        // Corrections of order t² are still visible at the largest sample;
        // the guard only needs to catch order-one mistakes.
        if dev > (1e-6f64).max(4.0 * tk * tk) {
            return Err(ParamError::NoProjectiveLimit(format!(
                "numeric check at t = {t} deviates from the symbolic limit by {dev:.3e}"
            )));
        }
    }
    Ok(RescaledLimit {
        exact: canonical,
        wall: limit_f64,
    })
}

pub fn canonical_exact(v: &[Exact]) -> Vec<Exact> {
    let mut best = 0;
    for i in 1..v.len() {
        if (v[i].abs() - v[best].abs()).is_positive() {
            best = i;
        }
    }
    let m = v[best].abs();
    v.iter().map(|c| *c / m).collect()
}

// ---------------------------------------------------------------------------
// Prefix expression syntax
// ---------------------------------------------------------------------------

/// Parse a whitespace-separated prefix expression, e.g. `* neg sqrt2 |t|`.
pub fn parse_expression(input: &str) -> Result<ParamScalar, ParamError> {
    let mut tokens = input.split_whitespace().peekable();
    let expr = parse_prefix(&mut tokens)?;
    if let Some(extra) = tokens.next() {
        return Err(ParamError::Parse(format!(
            "trailing token {extra:?} in {input:?}"
        )));
    }
    Ok(expr)
}

fn parse_prefix<'a>(
    tokens: &mut std::iter::Peekable<impl Iterator<Item = &'a str>>,
) -> Result<ParamScalar, ParamError> {
    let tok = tokens
        .next()
        .ok_or_else(|| ParamError::Parse("unexpected end of expression".into()))?;
    match tok {
        "+" => Ok(parse_prefix(tokens)? + parse_prefix(tokens)?),
        "-" => Ok(parse_prefix(tokens)? - parse_prefix(tokens)?),
        "*" => Ok(parse_prefix(tokens)? * parse_prefix(tokens)?),
        "neg" => Ok(-parse_prefix(tokens)?),
        "t" => Ok(ParamScalar::Atom(ParamAtom::T)),
        "|t|" => Ok(ParamScalar::Atom(ParamAtom::AbsT)),
        "t^2" => Ok(ParamScalar::Atom(ParamAtom::TSquared)),
        "sqrt2" => Ok(ParamScalar::constant(Exact::sqrt2())),
        "sqrt(1+t^2)" => Ok(ParamScalar::Atom(ParamAtom::SqrtOnePlusT2)),
        "sqrt(1-t^2)" => Ok(ParamScalar::Atom(ParamAtom::SqrtOneMinusT2)),
        num => parse_rational(num)
            .map(|r| ParamScalar::constant(Exact::rational(r)))
            .ok_or_else(|| ParamError::Parse(format!("unknown token {num:?}"))),
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<Rational> {
    let (num_str, den_str) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: i128 = num_str.parse().ok()?;
    let den: i128 = den_str.parse().ok()?;
    if den == 0 {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wall(label: &str, exprs: &[&str], domain: Domain) -> HalfSpaceFamily {
        HalfSpaceFamily {
            label: label.into(),
            coeffs: exprs.iter().map(|e| parse_expression(e).unwrap()).collect(),
            domain,
        }
    }

    #[test]
    fn parse_and_eval() {
        let e = parse_expression("* neg sqrt2 t^2").unwrap();
        assert!((e.eval_f64(0.5) + std::f64::consts::SQRT_2 * 0.25).abs() < 1e-15);
        let exact = e.eval_exact(Rational::new(1, 2)).unwrap();
        assert_eq!(exact, Exact::new(Rational::ZERO, Rational::new(-1, 4)));
    }

    #[test]
    fn parse_rejects_unknown_radicals() {
        assert!(parse_expression("sqrt3").is_err());
        assert!(parse_expression("+ t").is_err());
        assert!(parse_expression("t t").is_err());
    }

    #[test]
    fn sqrt_atoms_exact_at_special_points() {
        let e = parse_expression("sqrt(1+t^2)").unwrap();
        // At t = 1 the value √2 lies in the field.
        assert_eq!(e.eval_exact(Rational::ONE), Some(Exact::sqrt2()));
        // At t = 1/2 the value √(5)/2 does not.
        assert_eq!(e.eval_exact(Rational::new(1, 2)), None);
        assert!((e.eval_f64(0.5) - (1.25f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn series_of_sqrt_one_plus() {
        let e = parse_expression("sqrt(1+t^2)").unwrap();
        let s = e.series(Side::Pos);
        assert_eq!(s.coeff(0), Exact::integer(1));
        assert_eq!(s.coeff(2), Exact::rational(Rational::new(1, 2)));
        assert_eq!(s.coeff(4), Exact::rational(Rational::new(-1, 8)));
        // (√(1+t²))² − 1 − t² vanishes identically through the truncation.
        let sq = s.mul(&s);
        let residual = sq.sub(&Series::constant(Exact::integer(1)))
            .sub(&Series::monomial(Exact::integer(1), 2));
        assert_eq!(residual.leading(), None);
    }

    #[test]
    fn eta_limit_of_collapsing_wall() {
        // (−|t| : −√2|t| : 0 : −1) rescaled by η has limit (−1 : −√2 : 0 : −1).
        let f = wall(
            "L1",
            &["neg |t|", "neg * sqrt2 |t|", "0", "-1"],
            Domain::half_open(-1.0, 1.0),
        );
        for side in [Side::Pos, Side::Neg] {
            let lim = rescaled_limit(&f, RescaleKind::Eta, side).unwrap();
            let want = DualHalfSpace::new(vec![
                -1.0,
                -std::f64::consts::SQRT_2,
                0.0,
                -1.0,
            ]);
            assert!(lim.wall.approx_eq(&want, 1e-12), "side {side:?}");
        }
    }

    #[test]
    fn eta_limit_kills_odd_last_coordinate() {
        // (−1 : −√2 : 0 : t) → (−1 : −√2 : 0 : 0) from either side.
        let f = wall(
            "R1",
            &["-1", "neg sqrt2", "0", "t"],
            Domain::half_open(-1.0, 1.0),
        );
        for side in [Side::Pos, Side::Neg] {
            let lim = rescaled_limit(&f, RescaleKind::Eta, side).unwrap();
            let want =
                DualHalfSpace::new(vec![-1.0, -std::f64::consts::SQRT_2, 0.0, 0.0]);
            assert!(lim.wall.approx_eq(&want, 1e-12));
        }
    }

    #[test]
    fn gamma_limit_of_point_collapse_wall() {
        // (−t : −√2t² : 0 : −1) rescaled by γ has limit (−1 : 0 : 0 : −1).
        let f = wall(
            "L1",
            &["neg t", "neg * sqrt2 t^2", "0", "-1"],
            Domain::half_open(-1.0, 1.0),
        );
        let lim = rescaled_limit(&f, RescaleKind::Gamma, Side::Pos).unwrap();
        let want = DualHalfSpace::new(vec![-1.0, 0.0, 0.0, -1.0]);
        assert!(lim.wall.approx_eq(&want, 1e-12));
    }

    #[test]
    fn horizontal_wall_limit_is_nondegenerate() {
        // (−t : 0 : √(1+t²)) under η tends to (−1 : 0 : 1).
        let f = wall(
            "top",
            &["neg t", "0", "sqrt(1+t^2)"],
            Domain::half_open(0.0, 1.0),
        );
        let lim = rescaled_limit(&f, RescaleKind::Eta, Side::Pos).unwrap();
        let want = DualHalfSpace::new(vec![-1.0, 0.0, 1.0]);
        assert!(lim.wall.approx_eq(&want, 1e-12));
        // The negative side is outside this branch's domain.
        assert!(matches!(
            rescaled_limit(&f, RescaleKind::Eta, Side::Neg),
            Err(ParamError::SideNotInDomain { .. })
        ));
    }

    #[test]
    fn constant_wall_unchanged_by_eta() {
        let f = wall(
            "lA",
            &["-1", "sqrt2", "0", "0", "0"],
            Domain::open(-1.0, 0.577),
        );
        let at = dual_rescale(&f, RescaleKind::Eta, 0.25).unwrap();
        let want = family_eval(&f, 0.25).unwrap();
        assert!(at.approx_eq(&want, 1e-12));
    }

    #[test]
    fn domain_errors() {
        let f = wall("w", &["t", "1"], Domain::half_open(0.0, 1.0));
        assert!(matches!(
            family_eval(&f, 2.0),
            Err(ParamError::OutsideDomain { .. })
        ));
        assert!(matches!(
            dual_rescale(&f, RescaleKind::Gamma, 0.0),
            Err(ParamError::NoProjectiveLimit(_))
        ));
    }
}
