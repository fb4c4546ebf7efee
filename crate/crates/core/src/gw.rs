//! The Grothendieck-Witt ring, realized as the quotient of the group ring
//! `Z[K*/K*^2]`.
//!
//! Elements are stored as group-ring elements `Σ n_a <a>`; equality is decided
//! in `GW(K)` through the injection `GW -> Z ⊕ W`.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::ext_binom;
use crate::error::{Error, Result};
use crate::field::{FieldRef, SquareClass};
use crate::ring::CoeffRing;
use crate::series::TruncSeries;
use crate::witt::WittClass;

#[derive(Clone, Debug)]
pub struct GwElement {
    field: FieldRef,
    terms: BTreeMap<SquareClass, i64>,
}

impl GwElement {
    pub fn zero(field: &FieldRef) -> Self {
        Self { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::class(field, SquareClass::ONE).expect("1 is in every field")
    }

    /// The one-dimensional form `<a>`.
    pub fn class(field: &FieldRef, a: SquareClass) -> Result<Self> {
        field.check(a)?;
        Ok(Self { field: field.clone(), terms: BTreeMap::from([(a, 1)]) })
    }

    pub fn from_terms(field: &FieldRef, terms: impl IntoIterator<Item = (SquareClass, i64)>) -> Result<Self> {
        let mut out = Self::zero(field);
        for (a, m) in terms {
            field.check(a)?;
            out.add_term(a, m);
        }
        Ok(out)
    }

    fn add_term(&mut self, a: SquareClass, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(a).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&a);
        }
    }

    /// The diagonal form `<a1, ..., am>`.
    pub fn diag(field: &FieldRef, entries: &[SquareClass]) -> Result<Self> {
        Self::from_terms(field, entries.iter().map(|&a| (a, 1)))
    }

    /// The hyperbolic plane `<1, -1>`.
    pub fn hyperbolic(field: &FieldRef) -> Self {
        Self::diag(field, &[SquareClass::ONE, field.minus_one()]).expect("base classes")
    }

    /// The Pfister form `<<a1, ..., an>> = Π <1, -a_i>`.
    pub fn pfister(field: &FieldRef, args: &[SquareClass]) -> Result<Self> {
        if args.is_empty() {
            return Err(Error::Domain("Pfister form needs at least one slot".into()));
        }
        let m1 = field.minus_one();
        let mut acc = Self::one(field);
        for &a in args {
            acc = acc.mul(&Self::diag(field, &[SquareClass::ONE, m1 * field.check(a)?])?)?;
        }
        Ok(acc)
    }

    /// The Grothendieck-Pfister element `Π (<1> - <a_i>)`, of dimension zero.
    pub fn gpfister(field: &FieldRef, args: &[SquareClass]) -> Result<Self> {
        if args.is_empty() {
            return Err(Error::Domain("Grothendieck-Pfister element needs at least one slot".into()));
        }
        let mut acc = Self::one(field);
        for &a in args {
            acc = acc.mul(&Self::from_terms(field, [(SquareClass::ONE, 1), (field.check(a)?, -1)])?)?;
        }
        Ok(acc)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (SquareClass, i64)> + '_ {
        self.terms.iter().map(|(&a, &m)| (a, m))
    }

    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Whether all multiplicities are nonnegative (an actual quadratic form).
    pub fn is_form(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// Diagonal entries of an actual form, with multiplicity.
    pub fn entries(&self) -> Result<Vec<SquareClass>> {
        if !self.is_form() {
            return Err(Error::Domain("not a nonnegative combination of one-dimensional forms".into()));
        }
        Ok(self.terms.iter().flat_map(|(&a, &m)| std::iter::repeat_n(a, m as usize)).collect())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (&a, &m) in &other.terms {
            out.add_term(a, m);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), terms: self.terms.iter().map(|(&a, &m)| (a, -m)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero(&self.field);
        }
        Self { field: self.field.clone(), terms: self.terms.iter().map(|(&a, &m)| (a, m * n)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = Self::zero(&self.field);
        for (&a, &m) in &self.terms {
            for (&b, &k) in &other.terms {
                out.add_term(a * b, m * k);
            }
        }
        Ok(out)
    }

    /// `<a> x`.
    pub fn mul_class(&self, a: SquareClass) -> Result<Self> {
        self.field.check(a)?;
        Ok(Self { field: self.field.clone(), terms: self.terms.iter().map(|(&b, &m)| (a * b, m)).collect() })
    }

    pub fn witt(&self) -> WittClass {
        WittClass::from_gw(self)
    }

    /// Equality in `GW(K)`: same dimension and same Witt class.
    pub fn gw_eq(&self, other: &Self) -> Result<bool> {
        self.check_field(other)?;
        Ok(self.dim() == other.dim() && self.witt() == other.witt())
    }

    pub fn is_zero_gw(&self) -> bool {
        self.dim() == 0 && self.witt().is_zero()
    }

    /// Canonical group-ring representative: the Witt diagonal plus a multiple
    /// of the hyperbolic plane.
    pub fn canonical(&self) -> Self {
        let diag = self.witt().to_diagonal();
        let k = (self.dim() - diag.dim()) / 2;
        diag.add(&Self::hyperbolic(&self.field).scale(k)).expect("same field")
    }

    /// `λ_t(x)` to precision `prec`: `Π (1 + <a>t)^{n_a}` over the positive
    /// terms divided by the same product over the negative terms.
    pub fn lambda_series(&self, prec: usize) -> Result<TruncSeries<GwElement>> {
        let one = Self::one(&self.field);
        let mut pos = TruncSeries::constant(one.clone(), prec);
        let mut neg = TruncSeries::constant(one.clone(), prec);
        for (&a, &m) in &self.terms {
            // λ_t(m<a>) = Σ_k binom(m, k) <a^k> t^k for m >= 0
            let mm = m.abs();
            let coeffs: Vec<GwElement> = (0..=prec)
                .map(|k| {
                    let c = ext_binom(mm, k as i64);
                    let cls = if k % 2 == 0 { SquareClass::ONE } else { a };
                    Self::class(&self.field, cls).expect("own class").scale(c)
                })
                .collect();
            let factor = TruncSeries::from_coeffs(coeffs)?;
            if m > 0 {
                pos = pos.mul(&factor)?;
            } else {
                neg = neg.mul(&factor)?;
            }
        }
        pos.mul(&neg.mul_inverse()?)
    }

    pub fn lambda_power(&self, d: usize) -> Result<GwElement> {
        Ok(self.lambda_series(d)?.coeff(d).expect("precision d").clone())
    }

    /// Parses `form := term (('+'|'-') term)*`, `term := [int '*'] atom`,
    /// `atom := diag(sc,...) | pf(sc,...) | H`, plus the literal `0` that
    /// `Display` prints for the zero element.
    pub fn parse(field: &FieldRef, s: &str) -> Result<Self> {
        let mut acc = Self::zero(field);
        let src = s.trim();
        if src.is_empty() {
            return Err(Error::Parse("empty form".into()));
        }
        if src == "0" {
            return Ok(acc);
        }
        // split at top-level signs; only the first term may lack a left operand
        let mut pieces: Vec<(i64, &str)> = Vec::new();
        let mut sign = 1i64;
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, c) in src.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(|| Error::Parse(format!("unbalanced ')' in {src:?}")))?,
                '+' | '-' if depth == 0 => {
                    let piece = src[start..i].trim();
                    if piece.is_empty() {
                        if i != 0 && !(pieces.is_empty() && src[..i].trim().is_empty()) {
                            return Err(Error::Parse(format!("dangling operator in {src:?}")));
                        }
                    } else {
                        pieces.push((sign, piece));
                    }
                    sign = if c == '+' { 1 } else { -1 };
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced '(' in {src:?}")));
        }
        let last = src[start..].trim();
        if last.is_empty() {
            return Err(Error::Parse(format!("trailing operator in {src:?}")));
        }
        pieces.push((sign, last));
        for (sign, piece) in pieces {
            acc = acc.add(&Self::parse_term(field, piece)?.scale(sign))?;
        }
        Ok(acc)
    }

    fn parse_term(field: &FieldRef, s: &str) -> Result<Self> {
        let (mult, atom) = match s.split_once('*') {
            Some((n, rest)) if !n.contains('(') => {
                let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {s:?}")))?;
                (n, rest.trim())
            }
            _ => (1, s.trim()),
        };
        let args = |body: &str| -> Result<Vec<SquareClass>> {
            body.split(',').map(|a| field.parse_square_class(a)).collect()
        };
        let value = if atom == "H" {
            Self::hyperbolic(field)
        } else if let Some(body) = atom.strip_prefix("diag(").and_then(|b| b.strip_suffix(')')) {
            Self::diag(field, &args(body)?)?
        } else if let Some(body) = atom.strip_prefix("pf(").and_then(|b| b.strip_suffix(')')) {
            Self::pfister(field, &args(body)?)?
        } else {
            return Err(Error::Parse(format!("unknown form atom {atom:?}")));
        };
        Ok(value.scale(mult))
    }
}

impl PartialEq for GwElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim() == other.dim() && self.witt() == other.witt()
    }
}

impl fmt::Display for GwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |sign: i64| -> Option<String> {
            let entries: Vec<String> = self
                .terms
                .iter()
                .filter(|(_, &m)| m * sign > 0)
                .flat_map(|(&a, &m)| std::iter::repeat_n(self.field.render_square_class(a), m.unsigned_abs() as usize))
                .collect();
            (!entries.is_empty()).then(|| format!("diag({})", entries.join(",")))
        };
        match (render(1), render(-1)) {
            (None, None) => write!(f, "0"),
            (Some(p), None) => write!(f, "{p}"),
            (None, Some(n)) => write!(f, "-{n}"),
            (Some(p), Some(n)) => write!(f, "{p} - {n}"),
        }
    }
}

impl CoeffRing for GwElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn add(&self, other: &Self) -> Self {
        GwElement::add(self, other).expect("GW elements over different fields")
    }
    fn neg(&self) -> Self {
        GwElement::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        GwElement::mul(self, other).expect("GW elements over different fields")
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.is_zero_gw()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::one(&self.field).scale(n)
    }
    fn unit_inverse(&self) -> Option<Self> {
        // ±<a> is its own inverse up to sign
        let c = self.canonical();
        let mut it = c.terms.iter();
        match (it.next(), it.next()) {
            (Some((&a, &m)), None) if m.abs() == 1 => Some(Self { field: self.field.clone(), terms: BTreeMap::from([(a, m)]) }),
            _ => None,
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        self.field == other.field
    }
}
