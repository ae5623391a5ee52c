//! Exact sparse Laurent polynomials over the Gaussian integers.
//!
//! A [`LaurentPoly`] lives in one base variable (written `A`, or `t = q^(1/2)`
//! for the oriented models) and the loop variables `d0, d2, d3, ...`.  The
//! loop variable `d1` never appears: it is always stored as `-A^2 - A^-2`.
//!
//! [`RawBracketPoly`] keeps `A`, `B` and `d` independent and is only used for
//! the unspecialized rotational bracket.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub mod parse;

pub use parse::{parse_laurent, parse_raw, PolyParseError};

/// Gaussian integer coefficient.
pub type Coeff = Complex<i64>;

/// Exponents of the loop variables `d_n` (`n != 1`).
pub type LoopExps = BTreeMap<u32, u32>;

pub trait Monomial: Clone + Ord + std::hash::Hash + fmt::Debug {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
}

fn mul_loops(a: &LoopExps, b: &LoopExps) -> LoopExps {
    let mut out = a.clone();
    for (&n, &e) in b {
        *out.entry(n).or_insert(0) += e;
    }
    out
}

/// `A^base * prod d_n^{e_n}`.
///
/// Ordering is the printing order: loop part first (the empty loop part is
/// smallest, then lexicographic), then base exponent descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub base: i32,
    pub loops: LoopExps,
}

impl Mono {
    pub fn new(base: i32, loops: LoopExps) -> Self {
        debug_assert!(!loops.contains_key(&1));
        Mono {
            base,
            loops: loops.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn base(base: i32) -> Self {
        Mono { base, loops: LoopExps::new() }
    }

    pub fn loop_degree(&self) -> u32 {
        self.loops.values().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.loops
            .iter()
            .cmp(other.loops.iter())
            .then(other.base.cmp(&self.base))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for Mono {
    fn one() -> Self {
        Mono::base(0)
    }

    fn mul(&self, other: &Self) -> Self {
        Mono {
            base: self.base + other.base,
            loops: mul_loops(&self.loops, &other.loops),
        }
    }

    fn is_one(&self) -> bool {
        self.base == 0 && self.loops.is_empty()
    }
}

/// `A^a B^b d^d * prod d_n^{e_n}` for the raw rotational bracket.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawMono {
    pub d: u32,
    pub loops: LoopExps,
    pub a: i32,
    pub b: i32,
}

impl Monomial for RawMono {
    fn one() -> Self {
        RawMono { d: 0, loops: LoopExps::new(), a: 0, b: 0 }
    }

    fn mul(&self, other: &Self) -> Self {
        RawMono {
            d: self.d + other.d,
            loops: mul_loops(&self.loops, &other.loops),
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    fn is_one(&self) -> bool {
        self.a == 0 && self.b == 0 && self.d == 0 && self.loops.is_empty()
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    terms: BTreeMap<M, Coeff>,
}

pub type LaurentPoly = Poly<Mono>;
pub type RawBracketPoly = Poly<RawMono>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), Coeff::new(1, 0))
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::new(n, 0))
    }

    pub fn imag_unit() -> Self {
        Self::constant(Coeff::new(0, 1))
    }

    pub fn monomial(m: M, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Builds from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (M, Coeff)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: M, c: Coeff) {
        if c == Coeff::new(0, 0) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == Coeff::new(0, 0) {
                    o.remove();
                }
            }
        }
    }

    /// Drops zero coefficients.  Every constructor already normalizes, so this
    /// is only needed after direct coefficient edits.
    pub fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| *c != Coeff::new(0, 0));
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && *c == Coeff::new(1, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Coeff)> {
        self.terms.iter()
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0)
    }

    pub fn scale(&self, c: Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn mul_monomial(&self, m: &M) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), *v)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a ring map monomial by monomial.
    pub fn map_terms<N: Monomial>(&self, f: impl Fn(&M) -> Poly<N>) -> Poly<N> {
        let mut out = Poly::<N>::zero();
        for (m, c) in &self.terms {
            out += &f(m).scale(*c);
        }
        out
    }
}

impl LaurentPoly {
    /// The base variable `A`.
    pub fn var() -> Self {
        Self::monomial(Mono::base(1), Coeff::new(1, 0))
    }

    /// `c * A^k`.
    pub fn term(c: i64, k: i32) -> Self {
        Self::monomial(Mono::base(k), Coeff::new(c, 0))
    }

    /// `-A^2 - A^-2`, the value of a loop of Whitney class 1.
    pub fn loop_value() -> Self {
        Self::term(-1, 2) + Self::term(-1, -2)
    }

    /// The loop variable of class `n`; class 1 is substituted eagerly.
    pub fn loop_var(n: u32) -> Self {
        if n == 1 {
            return Self::loop_value();
        }
        let mut loops = LoopExps::new();
        loops.insert(n, 1);
        Self::monomial(Mono::new(0, loops), Coeff::new(1, 0))
    }

    /// Quantum evaluation of a loop of class `n`:
    /// `(-1)^n (A^{2n} + A^{-2n})`.
    pub fn quantum_loop(n: u32) -> Self {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let k = 2 * n as i32;
        Self::term(sign, k) + Self::term(sign, -k)
    }

    /// Replace every loop variable `d_n` by `f(n)`.
    pub fn substitute_loops(&self, f: impl Fn(u32) -> LaurentPoly) -> LaurentPoly {
        self.map_terms(|m| {
            let mut p = Self::monomial(Mono::base(m.base), Coeff::new(1, 0));
            for (&n, &e) in &m.loops {
                p = &p * &f(n).pow(e);
            }
            p
        })
    }

    /// `A -> A^{-1}`.
    pub fn invert_base(&self) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(-m.base, m.loops.clone()), *c)),
        )
    }

    /// `A -> A^k` (used to express `q = t^2`).
    pub fn scale_base(&self, k: i32) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(m.base * k, m.loops.clone()), *c)),
        )
    }

    /// Flat specialization `A = -1`.
    pub fn flat(&self) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let s = if m.base.rem_euclid(2) == 0 { 1 } else { -1 };
            (Mono::new(0, m.loops.clone()), c * s)
        }))
    }

    /// Exact quotient by `-A^2 - A^-2`, if it exists.
    pub fn div_loop_value(&self) -> Option<LaurentPoly> {
        let mut groups: BTreeMap<LoopExps, BTreeMap<i32, Coeff>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.loops.clone()).or_default().insert(m.base, *c);
        }
        let mut out = LaurentPoly::zero();
        for (loops, mut rem) in groups {
            // divide by A^4 + 1 from the top
            while let (Some((&hi, &c)), Some((&lo, _))) = (rem.last_key_value(), rem.first_key_value()) {
                if hi - lo < 4 {
                    return None;
                }
                // quotient term c A^(hi-4); times -A^2 for the sign and shift
                out.add_term(Mono::new(hi - 2, loops.clone()), -c);
                for k in [hi, hi - 4] {
                    let e = rem.entry(k).or_insert(Coeff::new(0, 0));
                    *e -= c;
                    if *e == Coeff::new(0, 0) {
                        rem.remove(&k);
                    }
                }
            }
        }
        Some(out)
    }

    /// Min and max exponent of the base variable, if nonzero.
    pub fn base_span(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.base);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Renders with the given name for the base variable.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.terms.iter().map(|(m, c)| {
                let mut factors = Vec::new();
                if m.base != 0 {
                    factors.push(power(var, m.base as i64));
                }
                for (&n, &e) in &m.loops {
                    factors.push(power(&format!("d{n}"), e as i64));
                }
                (factors, *c)
            }),
        )
    }

    /// Renders an oriented-model value stored in `t = q^(1/2)` as powers of
    /// `q`, e.g. `q^3/2`.
    pub fn render_q(&self) -> String {
        render_terms(self.terms.iter().map(|(m, c)| {
            let mut factors = Vec::new();
            if m.base != 0 {
                factors.push(if m.base % 2 == 0 {
                    power("q", (m.base / 2) as i64)
                } else {
                    format!("q^{}/2", m.base)
                });
            }
            for (&n, &e) in &m.loops {
                factors.push(power(&format!("d{n}"), e as i64));
            }
            (factors, *c)
        }))
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff_re: c.re,
                coeff_im: c.im,
                base_exp: m.base,
                loops: m.loops.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Self {
        Self::from_terms(terms.iter().map(|t| {
            (
                Mono::new(t.base_exp, t.loops.clone()),
                Coeff::new(t.coeff_re, t.coeff_im),
            )
        }))
    }
}

/// JSON shape of one polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff_re: i64,
    pub coeff_im: i64,
    pub base_exp: i32,
    pub loops: LoopExps,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        Ok(Self::from_json_terms(&terms))
    }
}

impl RawBracketPoly {
    pub fn a_pow(k: i32) -> Self {
        Self::monomial(RawMono { a: k, ..RawMono::one() }, Coeff::new(1, 0))
    }

    pub fn b_pow(k: i32) -> Self {
        Self::monomial(RawMono { b: k, ..RawMono::one() }, Coeff::new(1, 0))
    }

    /// The raw symbol `d` (a loop of class 1).
    pub fn d() -> Self {
        Self::monomial(RawMono { d: 1, ..RawMono::one() }, Coeff::new(1, 0))
    }

    pub fn loop_var(n: u32) -> Self {
        if n == 1 {
            return Self::d();
        }
        let mut loops = LoopExps::new();
        loops.insert(n, 1);
        Self::monomial(RawMono { loops, ..RawMono::one() }, Coeff::new(1, 0))
    }

    /// `B -> A^{-1}`, `d -> -A^2 - A^-2`.
    pub fn substitute_d1(&self) -> LaurentPoly {
        self.map_terms(|m| {
            LaurentPoly::monomial(Mono::new(m.a - m.b, m.loops.clone()), Coeff::new(1, 0))
                * LaurentPoly::loop_value().pow(m.d)
        })
    }

    /// Renders grouped by the loop part, e.g. `(A^2 + B^2 + A B) d + A B d0^2`.
    pub fn render(&self) -> String {
        let mut groups: BTreeMap<(std::cmp::Reverse<u32>, LoopExps), Vec<(&RawMono, Coeff)>> =
            BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry((std::cmp::Reverse(m.d), m.loops.clone()))
                .or_default()
                .push((m, *c));
        }
        if groups.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((std::cmp::Reverse(d), loops), mut inner)) in groups.into_iter().enumerate() {
            // pure powers before mixed ones, then A-degree descending
            inner.sort_by_key(|(m, _)| {
                let vars = (m.a != 0) as u8 + (m.b != 0) as u8;
                (vars, -m.a, -m.b)
            });
            let mut outer = Vec::new();
            if d > 0 {
                outer.push(power("d", d as i64));
            }
            for (&n, &e) in &loops {
                outer.push(power(&format!("d{n}"), e as i64));
            }
            let inner_factors = |m: &RawMono| {
                let mut f = Vec::new();
                if m.a != 0 {
                    f.push(power("A", m.a as i64));
                }
                if m.b != 0 {
                    f.push(power("B", m.b as i64));
                }
                f
            };
            let (text, negative) = if inner.len() == 1 {
                let (m, c) = inner[0];
                let mut f = inner_factors(m);
                f.extend(outer);
                let (s, neg) = render_term(&f, c);
                (s, neg)
            } else {
                let body = render_terms(inner.iter().map(|(m, c)| (inner_factors(m), *c)));
                let mut s = format!("({body})");
                if !outer.is_empty() {
                    s.push(' ');
                    s.push_str(&outer.join(" "));
                }
                (s, false)
            };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&text);
        }
        out
    }
}

fn power(var: &str, e: i64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// Renders one term as (text without leading sign, negative?).
fn render_term(factors: &[String], c: Coeff) -> (String, bool) {
    let (negative, mag) = if c.im == 0 {
        (c.re < 0, Coeff::new(c.re.abs(), 0))
    } else if c.re == 0 {
        (c.im < 0, Coeff::new(0, c.im.abs()))
    } else {
        (false, c)
    };
    let coeff_text = if mag.im == 0 {
        if mag.re == 1 && !factors.is_empty() {
            String::new()
        } else {
            mag.re.to_string()
        }
    } else if mag.re == 0 {
        if mag.im == 1 {
            "i".to_string()
        } else {
            format!("{}i", mag.im)
        }
    } else if mag.im < 0 {
        format!("({}-{}i)", mag.re, -mag.im)
    } else {
        format!("({}+{}i)", mag.re, mag.im)
    };
    let mut parts = Vec::new();
    if !coeff_text.is_empty() {
        parts.push(coeff_text);
    }
    parts.extend(factors.iter().cloned());
    (parts.join(" "), negative)
}

fn render_terms<I: IntoIterator<Item = (Vec<String>, Coeff)>>(terms: I) -> String {
    let mut out = String::new();
    for (i, (factors, c)) in terms.into_iter().enumerate() {
        let (text, negative) = render_term(&factors, c);
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A"))
    }
}

impl fmt::Display for RawBracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<M: Monomial> AddAssign<&Poly<M>> for Poly<M> {
    fn add_assign(&mut self, rhs: &Poly<M>) {
        for (m, c) in &rhs.terms {
            let slot = self.terms.entry(m.clone()).or_insert(Coeff::new(0, 0));
            *slot += c;
        }
        self.terms.retain(|_, c| *c != Coeff::new(0, 0));
    }
}

impl<M: Monomial> AddAssign for Poly<M> {
    fn add_assign(&mut self, rhs: Poly<M>) {
        *self += &rhs;
    }
}

impl<M: Monomial> SubAssign<&Poly<M>> for Poly<M> {
    fn sub_assign(&mut self, rhs: &Poly<M>) {
        for (m, c) in &rhs.terms {
            let slot = self.terms.entry(m.clone()).or_insert(Coeff::new(0, 0));
            *slot -= c;
        }
        self.terms.retain(|_, c| *c != Coeff::new(0, 0));
    }
}

impl<M: Monomial> Add<&Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(mut self, rhs: Poly<M>) -> Poly<M> {
        self += &rhs;
        self
    }
}

impl<M: Monomial> Sub<&Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(mut self, rhs: Poly<M>) -> Poly<M> {
        self -= &rhs;
        self
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -&self
    }
}

impl<M: Monomial> Mul<&Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        let mut terms: BTreeMap<M, Coeff> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *terms.entry(m1.mul(m2)).or_insert(Coeff::new(0, 0)) += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != Coeff::new(0, 0));
        Poly { terms }
    }
}

impl<M: Monomial> Mul for Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Poly<M>) -> Poly<M> {
        &self * &rhs
    }
}

impl<M: Monomial> MulAssign<&Poly<M>> for Poly<M> {
    fn mul_assign(&mut self, rhs: &Poly<M>) {
        *self = &*self * rhs;
    }
}

impl<M: Monomial> std::iter::Sum for Poly<M> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly;

    fn a(k: i32) -> P {
        P::term(1, k)
    }

    #[test]
    fn additive_inverse() {
        assert!((a(1) + -a(1)).is_zero());
    }

    #[test]
    fn disjoint_terms() {
        let p = a(2) + P::loop_var(0) + a(-2);
        assert_eq!(p.to_string(), "A^2 + A^-2 + d0");
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn bracket_matrix_entries_multiply_to_one() {
        let m12 = P::imag_unit() * a(1);
        let m21 = -(P::imag_unit() * a(-1));
        assert!((m12 * m21).is_one());
    }

    #[test]
    fn loop_powers() {
        let d0 = P::loop_var(0);
        assert_eq!((&d0 * &d0).to_string(), "d0^2");
    }

    #[test]
    fn difference_of_squares() {
        let p = (a(1) + a(-1)) * (a(1) - a(-1));
        assert_eq!(p, a(2) - a(-2));
    }

    #[test]
    fn d1_is_substituted() {
        assert_eq!(P::loop_var(1).to_string(), "-A^2 - A^-2");
        assert_eq!(P::quantum_loop(1), P::loop_value());
        assert_eq!(P::quantum_loop(0), P::int(2));
    }

    #[test]
    fn print_order_puts_loop_free_terms_first() {
        let p = P::loop_value() + P::loop_var(0).pow(2);
        assert_eq!(p.to_string(), "-A^2 - A^-2 + d0^2");
    }

    #[test]
    fn gaussian_coefficients_render() {
        let p = P::imag_unit() * a(1) - P::constant(Coeff::new(2, 3)) * a(-1);
        assert_eq!(p.to_string(), "i A + (-2-3i) A^-1");
    }

    #[test]
    fn raw_fig9_value_renders_grouped() {
        let (ra, rb) = (RawBracketPoly::a_pow(1), RawBracketPoly::b_pow(1));
        let d = RawBracketPoly::d();
        let d0 = RawBracketPoly::loop_var(0);
        let p = &(&(&ra * &ra) + &(&rb * &rb)) + &(&ra * &rb);
        let p = &(&p * &d) + &(&(&ra * &rb) * &(&d0 * &d0));
        assert_eq!(p.to_string(), "(A^2 + B^2 + A B) d + A B d0^2");
    }

    #[test]
    fn substitute_d1_on_raw_values() {
        assert_eq!(RawBracketPoly::d().substitute_d1(), P::loop_value());
        assert!(RawBracketPoly::zero().substitute_d1().is_zero());
        let (ra, rb) = (RawBracketPoly::a_pow(1), RawBracketPoly::b_pow(1));
        let d0 = RawBracketPoly::loop_var(0);
        let raw = &(&(&(&(&ra * &ra) + &(&rb * &rb)) + &(&ra * &rb)) * &RawBracketPoly::d())
            + &(&(&ra * &rb) * &(&d0 * &d0));
        // by hand: -(A^2 + A^-2 + 1)(A^2 + A^-2) + d0^2
        let s = a(2) + a(-2);
        let expected = -((&s + &P::one()) * s) + P::loop_var(0).pow(2);
        assert_eq!(raw.substitute_d1(), expected);
        assert_eq!(expected.to_string(), "-A^4 - A^2 - 2 - A^-2 - A^-4 + d0^2");
    }

    #[test]
    fn flat_specialization() {
        assert_eq!(P::loop_value().flat(), P::int(-2));
    }

    #[test]
    fn json_shape() {
        let p = P::imag_unit() * a(-1) + P::loop_var(2);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v[0]["coeff_im"], 1);
        assert_eq!(v[0]["base_exp"], -1);
        let back: P = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
