//! Mod-2 Galois cohomology `H*(K, μ2)` of a Laurent tower as an explicit graded
//! F2-algebra.
//!
//! Basis monomials are `(t_S) ∪ β` where `t_S` is the cup product of the
//! `(t_i)` for `i` in `S` and `β` is a basis element of `H*(k)`: `(-1)^j` over
//! a real closed base, `1` or `(u)` over a finite base, `1` over a
//! quadratically closed base. Multiplication uses `(t)∪(t) = (-1)∪(t)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field, FieldRef, SquareClass};
use crate::ring::CoeffRing;

/// A basis monomial: variable subset plus the degree of the base part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub vars: u32,
    pub base: u32,
}

impl Monomial {
    pub fn degree(self) -> u32 {
        self.vars.count_ones() + self.base
    }
}

#[derive(Clone, Debug)]
pub struct CohClass {
    field: FieldRef,
    mons: BTreeSet<Monomial>,
}

fn base_allows(base: BaseField, deg: u32) -> bool {
    match base {
        BaseField::QuadClosed => deg == 0,
        BaseField::RealClosed => true,
        BaseField::FiniteOdd(_) => deg <= 1,
    }
}

/// Degree (in the base generator) of `(-1)` in `H^1(k)`, if nonzero.
fn minus_one_base_degree(base: BaseField) -> Option<u32> {
    match base {
        BaseField::QuadClosed => None,
        BaseField::RealClosed => Some(1),
        BaseField::FiniteOdd(q) => (q % 4 == 3).then_some(1),
    }
}

impl CohClass {
    pub fn zero(field: &FieldRef) -> Self {
        Self { field: field.clone(), mons: BTreeSet::new() }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::monomial(field, Monomial { vars: 0, base: 0 })
    }

    /// The monomial, or zero if it vanishes in this field.
    pub fn monomial(field: &FieldRef, m: Monomial) -> Self {
        let mut out = Self::zero(field);
        if base_allows(field.base(), m.base) && u64::from(m.vars) >> field.depth() == 0 {
            out.mons.insert(m);
        }
        out
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.mons.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.mons.len() == 1 && self.mons.contains(&Monomial { vars: 0, base: 0 })
    }

    /// The degree-one class `(a)`.
    pub fn degree_one(field: &FieldRef, a: SquareClass) -> Result<Self> {
        field.check(a)?;
        let mut out = Self::zero(field);
        if a.base {
            out = out.add(&Self::monomial(field, Monomial { vars: 0, base: 1 }))?;
        }
        for i in 0..field.depth() {
            if a.vars & (1 << i) != 0 {
                out = out.add(&Self::monomial(field, Monomial { vars: 1 << i, base: 0 }))?;
            }
        }
        Ok(out)
    }

    /// `(-1)`.
    pub fn minus_one(field: &FieldRef) -> Self {
        match minus_one_base_degree(field.base()) {
            Some(b) => Self::monomial(field, Monomial { vars: 0, base: b }),
            None => Self::zero(field),
        }
    }

    /// The symbol `(a1) ∪ ... ∪ (an)`; the empty symbol is `1`.
    pub fn symbol(field: &FieldRef, args: &[SquareClass]) -> Result<Self> {
        let mut acc = Self::one(field);
        for &a in args {
            acc = acc.cup(&Self::degree_one(field, a)?)?;
        }
        Ok(acc)
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
        let mons = self.mons.symmetric_difference(&other.mons).copied().collect();
        Ok(Self { field: self.field.clone(), mons })
    }

    fn mono_product(&self, x: Monomial, y: Monomial) -> Option<Monomial> {
        let overlap = (x.vars & y.vars).count_ones();
        let mut base = x.base + y.base;
        if overlap > 0 {
            base += minus_one_base_degree(self.field.base())? * overlap;
        }
        base_allows(self.field.base(), base).then_some(Monomial { vars: x.vars | y.vars, base })
    }

    pub fn cup(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut mons = BTreeSet::new();
        for &x in &self.mons {
            for &y in &other.mons {
                if let Some(m) = self.mono_product(x, y) {
                    if !mons.insert(m) {
                        mons.remove(&m);
                    }
                }
            }
        }
        Ok(Self { field: self.field.clone(), mons })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = acc.cup(self)?;
        }
        Ok(acc)
    }

    /// Component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mons = self.mons.iter().copied().filter(|m| m.degree() == d).collect();
        Self { field: self.field.clone(), mons }
    }

    /// Whether every monomial has degree at least `d`.
    pub fn in_filtration(&self, d: u32) -> bool {
        self.mons.iter().all(|m| m.degree() >= d)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.mons.iter().all(|m| m.degree() == d)
    }

    /// Residue along the top variable, landing in the one-shorter tower.
    pub fn residue(&self) -> Result<Self> {
        let top = self
            .field
            .top_var_bit()
            .ok_or_else(|| Error::Domain("residue needs tower depth >= 1".into()))?;
        let field = self.field.residue_field()?.into_ref();
        let mons = self
            .mons
            .iter()
            .filter(|m| m.vars & top != 0)
            .map(|m| Monomial { vars: m.vars & !top, base: m.base })
            .collect();
        Ok(Self { field, mons })
    }

    /// Image under the inclusion of a sub-tower (a prefix of the variables).
    pub fn embed(&self, field: &FieldRef) -> Result<Self> {
        let sub = &self.field;
        if sub.base() != field.base() || !field.vars().starts_with(sub.vars()) {
            return Err(Error::FieldMismatch(sub.to_string(), field.to_string()));
        }
        Ok(Self { field: field.clone(), mons: self.mons.clone() })
    }

    /// Parses a sum of monomials written as in [`fmt::Display`].
    pub fn parse(field: &FieldRef, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut acc = Self::zero(field);
        if s == "0" {
            return Ok(acc);
        }
        for term in s.split('+').map(str::trim) {
            let mut m = Self::one(field);
            if term != "1" {
                for factor in term.split('.').map(str::trim) {
                    let (sym, exp) = match factor.split_once(")^") {
                        Some((sym, e)) => (
                            format!("{sym})"),
                            e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (factor.to_string(), 1),
                    };
                    let inner = sym
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("expected (class) in {factor:?}")))?;
                    let class = Self::degree_one(field, field.parse_square_class(inner)?)?;
                    m = m.cup(&class.pow(exp)?)?;
                }
            }
            acc = acc.add(&m)?;
        }
        Ok(acc)
    }
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.mons == other.mons
    }
}

impl Eq for CohClass {}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mons.is_empty() {
            return write!(f, "0");
        }
        let base_symbol = match self.field.base() {
            BaseField::FiniteOdd(_) => "(u)",
            _ => "(-1)",
        };
        let mut mons: Vec<&Monomial> = self.mons.iter().collect();
        mons.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.base), m.vars.reverse_bits()));
        let rendered: Vec<String> = mons
            .iter()
            .map(|m| {
                let mut parts = Vec::new();
                match m.base {
                    0 => {}
                    1 => parts.push(base_symbol.to_string()),
                    j => parts.push(format!("{base_symbol}^{j}")),
                }
                for (i, v) in self.field.vars().iter().enumerate() {
                    if m.vars & (1 << i) != 0 {
                        parts.push(format!("({v})"));
                    }
                }
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join(".")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl CoeffRing for CohClass {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn add(&self, other: &Self) -> Self {
        CohClass::add(self, other).expect("cohomology classes over different fields")
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.cup(other).expect("cohomology classes over different fields")
    }
    fn is_zero(&self) -> bool {
        self.mons.is_empty()
    }
    fn from_int_like(&self, n: i64) -> Self {
        if n % 2 == 0 {
            Self::zero(&self.field)
        } else {
            Self::one(&self.field)
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        // 1 + x with x of positive degree is a unit; we only certify 1
        self.is_one().then(|| self.clone())
    }
    fn compatible(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

/// Convenience for building a field reference from a descriptor string.
pub fn field_ref(s: &str) -> Result<FieldRef> {
    Ok(Field::parse(s)?.into_ref())
}
