//! Symbolic invariants of `I^n`: finitely supported coefficient sequences in
//! the `f`- or `g`-basis over the subring of `A(k)` generated by `{-1}`.
//!
//! For `A = W` that subring is `Z` with `{-1} = 2`; for `A = H` it is
//! `F2[ε]` with `ε = (-1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::multinomial;
use crate::divided::{f_in_g, f_values, g_from_f, g_in_f, AValue, Basis, Mode};
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldRef, SquareClass};
use crate::witt::WittClass;

/// A polynomial over `F2` in one variable, stored as its set of exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct F2Poly(BTreeSet<u32>);

impl F2Poly {
    pub fn monomial(j: u32) -> Self {
        Self(BTreeSet::from([j]))
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BTreeSet::new();
        for &a in &self.0 {
            for &b in &other.0 {
                if !out.insert(a + b) {
                    out.remove(&(a + b));
                }
            }
        }
        Self(out)
    }
}

/// A coefficient in the universal ring for the given target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UCoeff {
    W(BigInt),
    H(F2Poly),
}

impl UCoeff {
    pub fn zero(mode: Mode) -> Self {
        Self::int(mode, 0)
    }

    pub fn one(mode: Mode) -> Self {
        Self::int(mode, 1)
    }

    pub fn int(mode: Mode, n: i64) -> Self {
        match mode {
            Mode::W => UCoeff::W(BigInt::from(n)),
            Mode::H if n % 2 == 0 => UCoeff::H(F2Poly::default()),
            Mode::H => UCoeff::H(F2Poly::monomial(0)),
        }
    }

    /// `ε^j`.
    pub fn eps_pow(mode: Mode, j: u32) -> Self {
        match mode {
            Mode::W => UCoeff::W(BigInt::one() << j),
            Mode::H => UCoeff::H(F2Poly::monomial(j)),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            UCoeff::W(_) => Mode::W,
            UCoeff::H(_) => Mode::H,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            UCoeff::W(n) => n.is_zero(),
            UCoeff::H(p) => p.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (UCoeff::W(a), UCoeff::W(b)) => UCoeff::W(a + b),
            (UCoeff::H(a), UCoeff::H(b)) => UCoeff::H(a.add(b)),
            _ => panic!("coefficients of different targets"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            UCoeff::W(a) => UCoeff::W(-a),
            UCoeff::H(_) => self.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (UCoeff::W(a), UCoeff::W(b)) => UCoeff::W(a * b),
            (UCoeff::H(a), UCoeff::H(b)) => UCoeff::H(a.mul(b)),
            _ => panic!("coefficients of different targets"),
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        self.mul(&Self::int(self.mode(), n))
    }

    /// Image in `A(K)` under `ε ↦ {-1}`.
    pub fn evaluate(&self, field: &FieldRef) -> Result<AValue> {
        match self {
            UCoeff::W(n) => {
                let small = match field.base() {
                    // W(k) has exponent 2 or 4 for these bases
                    BaseField::QuadClosed | BaseField::FiniteOdd(_) => (n % 4u32).to_i64(),
                    BaseField::RealClosed => n.to_i64(),
                }
                .ok_or_else(|| Error::Domain(format!("coefficient {n} exceeds i64")))?;
                Ok(AValue::one(field, Mode::W).scale(small))
            }
            UCoeff::H(p) => {
                let mut acc = AValue::zero(field, Mode::H);
                for j in p.exponents() {
                    acc = acc.add(&AValue::eps_pow(field, Mode::H, j))?;
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for UCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UCoeff::W(n) => write!(f, "{n}"),
            UCoeff::H(p) => {
                let terms: Vec<String> = p
                    .exponents()
                    .rev()
                    .map(|j| match j {
                        0 => "1".to_string(),
                        1 => "eps".to_string(),
                        _ => format!("eps^{j}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join(" + "))
                }
            }
        }
    }
}

/// `Σ_d c_d b_n^d` with `b` the `f`- or `g`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicInvariant {
    n: u32,
    mode: Mode,
    basis: Basis,
    coeffs: BTreeMap<u32, UCoeff>,
}

impl SymbolicInvariant {
    pub fn zero(n: u32, mode: Mode, basis: Basis) -> Self {
        assert!(n >= 1, "invariants of I^n need n >= 1");
        Self { n, mode, basis, coeffs: BTreeMap::new() }
    }

    /// `f_n^d` or `g_n^d`.
    pub fn basis_element(n: u32, mode: Mode, basis: Basis, d: u32) -> Self {
        Self::zero(n, mode, basis).with_term(d, UCoeff::one(mode))
    }

    pub fn constant(n: u32, mode: Mode, c: UCoeff) -> Self {
        Self::zero(n, mode, Basis::G).with_term(0, c)
    }

    pub fn from_coeffs(n: u32, mode: Mode, basis: Basis, coeffs: impl IntoIterator<Item = (u32, UCoeff)>) -> Self {
        let mut out = Self::zero(n, mode, basis);
        for (d, c) in coeffs {
            out.add_term(d, &c);
        }
        out
    }

    fn with_term(mut self, d: u32, c: UCoeff) -> Self {
        self.add_term(d, &c);
        self
    }

    fn add_term(&mut self, d: u32, c: &UCoeff) {
        assert_eq!(c.mode(), self.mode, "coefficient of the wrong target");
        let e = self.coeffs.entry(d).or_insert_with(|| UCoeff::zero(self.mode));
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, UCoeff> {
        &self.coeffs
    }

    pub fn coeff(&self, d: u32) -> UCoeff {
        self.coeffs.get(&d).cloned().unwrap_or_else(|| UCoeff::zero(self.mode))
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Supported in degree 0 (in either basis, since both transitions are
    /// unipotent and fix the constants).
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&d| d == 0)
    }

    /// The value at `q = 0`, which is the constant coefficient in both bases.
    pub fn value_at_zero(&self) -> UCoeff {
        self.coeff(0)
    }

    pub fn is_normalized(&self) -> bool {
        self.value_at_zero().is_zero()
    }

    fn eps(&self, j: u32) -> UCoeff {
        UCoeff::eps_pow(self.mode, j)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.mode != other.mode {
            return Err(Error::RingMismatch(format!(
                "invariants of I^{} ({}) and I^{} ({})",
                self.n, self.mode, other.n, other.mode
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&d, c)| (d, c.neg())).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &UCoeff) -> Self {
        Self::from_coeffs(self.n, self.mode, self.basis, self.coeffs.iter().map(|(&d, a)| (d, a.mul(c))))
    }

    /// The same invariant written in the other basis.
    pub fn change_basis(&self) -> Self {
        let (target, coef): (Basis, fn(u32, u32) -> i64) = match self.basis {
            Basis::F => (Basis::G, f_in_g),
            Basis::G => (Basis::F, g_in_f),
        };
        let mut out = Self::zero(self.n, self.mode, target);
        for (&d, c) in &self.coeffs {
            for k in 0..=d {
                let m = coef(d, k);
                if m != 0 {
                    out.add_term(k, &c.mul(&self.eps(self.n * (d - k))).scale(m));
                }
            }
        }
        out
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        if self.basis == basis {
            self.clone()
        } else {
            self.change_basis()
        }
    }

    /// The shifting operators `Φ^+` (`plus = true`) and `Φ^-`, in the
    /// basis of `self`.
    pub fn phi(&self, plus: bool) -> Self {
        let n = self.n;
        let mut out = Self::zero(n, self.mode, self.basis);
        for (&d, c) in &self.coeffs {
            if d == 0 {
                continue;
            }
            match (self.basis, plus) {
                (Basis::F, true) => out.add_term(d - 1, c),
                (Basis::F, false) => {
                    for k in 0..d {
                        let sign = if (d - k - 1) % 2 == 0 { 1 } else { -1 };
                        out.add_term(k, &c.mul(&self.eps(n * (d - k - 1))).scale(sign));
                    }
                }
                (Basis::G, _) => {
                    // g^{e+1} with e = d-1
                    let e = d - 1;
                    out.add_term(e, c);
                    if e >= 1 {
                        let lower = c.mul(&self.eps(n));
                        match (plus, e % 2 == 0) {
                            (true, true) => out.add_term(e - 1, &lower),
                            (false, false) => out.add_term(e - 1, &lower.neg()),
                            _ => {}
                        }
                    }
                }
            }
        }
        out
    }

    /// `α^{r+,s-}`.
    pub fn phi_iter(&self, plus: u32, minus: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..plus {
            out = out.phi(true);
        }
        for _ in 0..minus {
            out = out.phi(false);
        }
        out
    }

    /// `a_d = α^{[d]}(0)`: recovers the `g`-basis coefficient of degree `d`.
    pub fn extract_coefficient(&self, d: u32) -> UCoeff {
        let m = d / 2;
        let shifted = if d.is_multiple_of(2) { self.phi_iter(m, m) } else { self.phi_iter(m + 1, m) };
        shifted.value_at_zero()
    }

    /// Product of invariants, computed in the `f`-basis and returned in the
    /// basis of `self`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b) = (self.to_basis(Basis::F), other.to_basis(Basis::F));
        let mut out = Self::zero(self.n, self.mode, Basis::F);
        for (&s, cs) in &a.coeffs {
            for (&t, ct) in &b.coeffs {
                let base = cs.mul(ct);
                for d in s.max(t)..=s + t {
                    let m = UCoeff::int(self.mode, multinomial(d, d - s, d - t)?);
                    out.add_term(d, &base.mul(&m).mul(&self.eps(self.n * (s + t - d))));
                }
            }
        }
        Ok(out.to_basis(self.basis))
    }

    /// The similitude operator `Ψ`, in the basis of `self`.
    pub fn psi_tilde(&self) -> Self {
        let g = self.to_basis(Basis::G);
        let delta = self.mode.delta();
        let mut out = Self::zero(self.n, self.mode, Basis::G);
        for (&d, c) in &g.coeffs {
            if d == 0 {
                continue;
            }
            if d % 2 == 1 {
                out.add_term(d, &c.scale(-delta));
            } else {
                out.add_term(d - 1, &c.mul(&self.eps(self.n - 1)));
            }
        }
        out.to_basis(self.basis)
    }

    /// `Ψ` through the unproved closed formula on the `f`-basis; used only to
    /// cross-check `psi_tilde`.
    pub fn psi_tilde_closed_form(&self) -> Self {
        let f = self.to_basis(Basis::F);
        let n = self.n;
        let mut out = Self::zero(n, self.mode, Basis::F);
        for (&d, c) in &f.coeffs {
            if d == 0 {
                continue;
            }
            let sign = if d % 2 == 0 { 1 } else { -1 };
            for k in 1..d {
                let b = crate::combinat::ext_binom(i64::from(d - 1), i64::from(k - 1));
                out.add_term(k, &c.mul(&self.eps(n * (d - k) - 1)).scale(sign * b));
            }
            if d % 2 == 1 {
                out.add_term(d, &c.scale(-self.mode.delta()));
            }
        }
        out.to_basis(self.basis)
    }

    /// Restriction to `I^{n+1}`, in the `f`-basis of `n+1`.
    pub fn restrict(&self) -> Self {
        let f = self.to_basis(Basis::F);
        let n = self.n;
        let mut out = Self::zero(n + 1, self.mode, Basis::F);
        for (&d, c) in &f.coeffs {
            match self.mode {
                Mode::W => {
                    for k in d.div_ceil(2)..=d {
                        let b = crate::combinat::ext_binom(i64::from(k), i64::from(d - k));
                        out.add_term(k, &c.mul(&self.eps((d - k) * (n - 1))).scale(b));
                    }
                }
                Mode::H => {
                    if d % 2 == 0 {
                        let m = d / 2;
                        out.add_term(m, &c.mul(&self.eps(m * (n - 1))));
                    }
                }
            }
        }
        out
    }

    /// `Ω^t: M(n) -> M(n-t)`, in the `f`-basis.
    pub fn omega(&self, t: u32) -> Result<Self> {
        if t >= self.n {
            return Err(Error::Domain(format!("Ω^t needs t < n, got t={t}, n={}", self.n)));
        }
        let f = self.to_basis(Basis::F);
        let mut out = Self::zero(self.n - t, self.mode, Basis::F);
        for (&d, c) in &f.coeffs {
            if d == 0 {
                out.add_term(0, c);
            } else {
                out.add_term(d, &c.mul(&self.eps(t * (d - 1))));
            }
        }
        Ok(out)
    }

    /// `α(q)` for `q ∈ I^n(K)`.
    pub fn evaluate(&self, q: &WittClass) -> Result<AValue> {
        let field = q.field();
        let fvals = f_values(self.n, self.max_degree() as usize, q, self.mode)?;
        let vals = match self.basis {
            Basis::F => fvals,
            Basis::G => g_from_f(self.n, &fvals)?,
        };
        let mut acc = AValue::zero(field, self.mode);
        for (&d, c) in &self.coeffs {
            acc = acc.add(&c.evaluate(field)?.mul(&vals[d as usize])?)?;
        }
        Ok(acc)
    }

    /// Parses `f[n,d]`, `g[n,d]`, `eps`, `eps^k`, integers, `+`, `-`, `*` and
    /// parentheses. Mixed-basis input is normalized to the first basis seen.
    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, mode, basis: None };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected input at offset {} in {s:?}", p.pos)));
        }
        match v {
            PVal::Inv(a) => Ok(a),
            PVal::Scalar(_) => Err(Error::Parse(format!("{s:?} has no f[n,d] or g[n,d] term to fix n"))),
        }
    }

    /// Evaluates `α` at `<λ>q` through `α(q) + {λ}ψ̃(α)(q)`.
    pub fn evaluate_scaled(&self, lambda: SquareClass, q: &WittClass) -> Result<AValue> {
        let field = q.field();
        let sym = AValue::symbol(field, self.mode, &[lambda])?;
        self.evaluate(q)?.add(&sym.mul(&self.psi_tilde().evaluate(q)?)?)
    }
}

impl fmt::Display for SymbolicInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.basis {
            Basis::F => 'f',
            Basis::G => 'g',
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&d, c)| {
                let c_str = match c {
                    UCoeff::W(v) if v.is_one() => String::new(),
                    UCoeff::H(p) if p.exponents().count() == 1 && p.exponents().next() == Some(0) => String::new(),
                    UCoeff::W(v) if v.is_negative() => format!("({v})*"),
                    UCoeff::H(p) if p.exponents().count() > 1 => format!("({c})*"),
                    _ => format!("{c}*"),
                };
                format!("{c_str}{letter}[{},{d}]", self.n)
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

enum PVal {
    Scalar(UCoeff),
    Inv(SymbolicInvariant),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
    basis: Option<Basis>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn combine(&mut self, a: PVal, b: PVal, add: bool) -> Result<PVal> {
        Ok(match (a, b) {
            (PVal::Scalar(x), PVal::Scalar(y)) => PVal::Scalar(if add { x.add(&y) } else { x.mul(&y) }),
            (PVal::Inv(x), PVal::Scalar(y)) | (PVal::Scalar(y), PVal::Inv(x)) => {
                if add {
                    PVal::Inv(x.add(&SymbolicInvariant::constant(x.n, self.mode, y))?)
                } else {
                    PVal::Inv(x.scale(&y))
                }
            }
            (PVal::Inv(x), PVal::Inv(y)) => PVal::Inv(if add { x.add(&y)? } else { x.product(&y)? }),
        })
    }

    fn normalize(&self, v: PVal) -> PVal {
        match (v, self.basis) {
            (PVal::Inv(a), Some(b)) => PVal::Inv(a.to_basis(b)),
            (v, _) => v,
        }
    }

    fn expr(&mut self) -> Result<PVal> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.combine(acc, PVal::Scalar(UCoeff::int(self.mode, -1)), false)?;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.combine(acc, t, true)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    let t = self.combine(t, PVal::Scalar(UCoeff::int(self.mode, -1)), false)?;
                    acc = self.combine(acc, t, true)?;
                }
                _ => return Ok(self.normalize(acc)),
            }
        }
    }

    fn term(&mut self) -> Result<PVal> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.combine(acc, f, false)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PVal> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                let v = i64::try_from(v).map_err(|_| self.err("integer too large"))?;
                Ok(PVal::Scalar(UCoeff::int(self.mode, v)))
            }
            Some(b'e') if self.src[self.pos..].starts_with(b"eps") => {
                self.pos += 3;
                let mut j = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    j = u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?;
                }
                Ok(PVal::Scalar(UCoeff::eps_pow(self.mode, j)))
            }
            Some(c @ (b'f' | b'g')) => {
                self.pos += 1;
                self.expect(b'[')?;
                let n = u32::try_from(self.number()?).map_err(|_| self.err("n too large"))?;
                self.expect(b',')?;
                let d = u32::try_from(self.number()?).map_err(|_| self.err("d too large"))?;
                self.expect(b']')?;
                if n == 0 {
                    return Err(self.err("n must be positive"));
                }
                let basis = if c == b'f' { Basis::F } else { Basis::G };
                self.basis.get_or_insert(basis);
                Ok(PVal::Inv(SymbolicInvariant::basis_element(n, self.mode, basis, d)))
            }
            _ => Err(self.err("expected f[n,d], g[n,d], eps, an integer or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32, mode: Mode, d: u32) -> SymbolicInvariant {
        SymbolicInvariant::basis_element(n, mode, Basis::F, d)
    }

    fn g(n: u32, mode: Mode, d: u32) -> SymbolicInvariant {
        SymbolicInvariant::basis_element(n, mode, Basis::G, d)
    }

    #[test]
    fn phi_examples() {
        for mode in [Mode::W, Mode::H] {
            for n in 1..=3 {
                for d in 0..6 {
                    assert_eq!(f(n, mode, d + 1).phi(true), f(n, mode, d));
                }
                assert!(f(n, mode, 0).phi(true).is_zero());
                // (f^2)^- = f^1 - ε^n f^0
                let expected = f(n, mode, 1).sub(&SymbolicInvariant::constant(n, mode, UCoeff::eps_pow(mode, n))).unwrap();
                assert_eq!(f(n, mode, 2).phi(false).to_basis(Basis::F), expected.to_basis(Basis::F));
                for m in 0..4 {
                    assert_eq!(g(n, mode, 2 * m + 1).phi(false), g(n, mode, 2 * m));
                    assert_eq!(g(n, mode, 2 * m + 2).phi(true), g(n, mode, 2 * m + 1));
                    let lower = g(n, mode, 2 * m).scale(&UCoeff::eps_pow(mode, n));
                    assert_eq!(g(n, mode, 2 * m + 2).phi(false), g(n, mode, 2 * m + 1).sub(&lower).unwrap());
                }
            }
        }
    }

    #[test]
    fn phi_agrees_across_bases() {
        for mode in [Mode::W, Mode::H] {
            for n in 1..=3 {
                for d in 0..10 {
                    for plus in [true, false] {
                        let via_g = g(n, mode, d).phi(plus).to_basis(Basis::F);
                        let via_f = g(n, mode, d).to_basis(Basis::F).phi(plus);
                        assert_eq!(via_g, via_f, "{mode} n={n} d={d} plus={plus}");
                    }
                }
            }
        }
    }

    #[test]
    fn definition_of_g() {
        for mode in [Mode::W, Mode::H] {
            for n in 1..=3 {
                for d in 1..10u32 {
                    let gd = g(n, mode, d);
                    let shifted = gd.phi(d % 2 == 0);
                    assert_eq!(shifted, g(n, mode, d - 1));
                    assert!(gd.to_basis(Basis::F).is_normalized());
                }
            }
        }
    }

    #[test]
    fn basis_change_examples() {
        for mode in [Mode::W, Mode::H] {
            let n = 2;
            assert_eq!(g(n, mode, 1).change_basis(), f(n, mode, 1));
            let expected = f(n, mode, 3).add(&f(n, mode, 2).scale(&UCoeff::eps_pow(mode, n))).unwrap();
            assert_eq!(g(n, mode, 3).change_basis(), expected);
            for d in 0..10 {
                assert_eq!(f(n, mode, d).change_basis().change_basis(), f(n, mode, d));
            }
        }
    }

    #[test]
    fn product_examples() {
        let w = Mode::W;
        // f1^1 f1^1 = ε f1^1 + 2 f1^2 with ε = 2
        let p = f(1, w, 1).product(&f(1, w, 1)).unwrap();
        let expected = SymbolicInvariant::from_coeffs(1, w, Basis::F, [(1, UCoeff::int(w, 2)), (2, UCoeff::int(w, 2))]);
        assert_eq!(p, expected);
        for n in 1..=3 {
            let p = f(n, Mode::H, 1).product(&f(n, Mode::H, 1)).unwrap();
            assert_eq!(p, f(n, Mode::H, 1).scale(&UCoeff::eps_pow(Mode::H, n)));
        }
        // H: u_s u_t = ε^{n(s∧t)} u_{s∨t}
        for s in 0..8u32 {
            for t in 0..8u32 {
                let p = f(2, Mode::H, s).product(&f(2, Mode::H, t)).unwrap();
                assert_eq!(p, f(2, Mode::H, s | t).scale(&UCoeff::eps_pow(Mode::H, 2 * (s & t))));
            }
        }
    }

    #[test]
    fn psi_examples() {
        for mode in [Mode::W, Mode::H] {
            for n in 1..=3 {
                for m in 1..4 {
                    assert_eq!(g(n, mode, 2 * m).psi_tilde(), g(n, mode, 2 * m - 1).scale(&UCoeff::eps_pow(mode, n - 1)));
                }
            }
        }
        assert_eq!(g(2, Mode::W, 3).psi_tilde(), g(2, Mode::W, 3).neg());
        assert!(g(2, Mode::H, 3).psi_tilde().is_zero());
    }

    #[test]
    fn psi_closed_form_matches() {
        for mode in [Mode::W, Mode::H] {
            for n in 1..=3 {
                for d in 0..=8 {
                    assert_eq!(f(n, mode, d).psi_tilde_closed_form(), f(n, mode, d).psi_tilde(), "{mode} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        for d in 1..6 {
            assert_eq!(f(1, Mode::H, 2 * d).restrict(), f(2, Mode::H, d));
            for n in 1..=3 {
                assert!(f(n, Mode::H, 2 * d - 1).restrict().is_zero());
            }
        }
        let expected = f(2, Mode::W, 1).add(&f(2, Mode::W, 2)).unwrap();
        assert_eq!(f(1, Mode::W, 2).restrict(), expected);
    }

    #[test]
    fn omega_examples() {
        for mode in [Mode::W, Mode::H] {
            assert_eq!(f(3, mode, 1).omega(2).unwrap(), f(1, mode, 1));
            assert_eq!(f(3, mode, 2).omega(1).unwrap(), f(2, mode, 2).scale(&UCoeff::eps_pow(mode, 1)));
            let c = SymbolicInvariant::constant(2, mode, UCoeff::int(mode, 3));
            assert_eq!(c.omega(1).unwrap().coeff(0), UCoeff::int(mode, 3));
            assert!(f(2, mode, 1).omega(2).is_err());
        }
    }

    #[test]
    fn parse_and_display() {
        let a = SymbolicInvariant::parse("g[2,3] + eps^2*f[2,1]", Mode::W).unwrap();
        assert_eq!(a.basis(), Basis::G);
        let expected = g(2, Mode::W, 3).add(&f(2, Mode::W, 1).scale(&UCoeff::int(Mode::W, 4))).unwrap();
        assert_eq!(a, expected);
        let b = SymbolicInvariant::parse("3*f[1,2] - f[1,0]", Mode::W).unwrap();
        assert_eq!(b.to_string(), "(-1)*f[1,0] + 3*f[1,2]");
        let c = SymbolicInvariant::parse("(eps + 1)*f[1,2]", Mode::H).unwrap();
        assert_eq!(c.to_string(), "(eps + 1)*f[1,2]");
        assert_eq!(SymbolicInvariant::parse("f[1,1]*f[1,1]", Mode::H).unwrap(), f(1, Mode::H, 1).scale(&UCoeff::eps_pow(Mode::H, 1)));
        for bad in ["", "f[1,", "f[0,2]", "h[1,1]", "3", "f[1,1] +", "f[1,1] + f[2,1]"] {
            assert!(SymbolicInvariant::parse(bad, Mode::W).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn coefficient_evaluation() {
        let r = crate::cohomology::field_ref("R((t))").unwrap();
        assert_eq!(UCoeff::eps_pow(Mode::W, 3).evaluate(&r).unwrap(), AValue::eps_pow(&r, Mode::W, 3));
        let c = crate::cohomology::field_ref("C((t))").unwrap();
        assert!(UCoeff::eps_pow(Mode::W, 1).evaluate(&c).unwrap().is_zero());
        assert!(UCoeff::eps_pow(Mode::H, 1).evaluate(&c).unwrap().is_zero());
        assert!(UCoeff::eps_pow(Mode::H, 0).evaluate(&c).unwrap() == AValue::one(&c, Mode::H));
    }
}
