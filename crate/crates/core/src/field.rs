//! Computable ground fields: iterated Laurent towers `k((t1))...((tm))` over a
//! quadratically closed, real closed, or finite field of odd order.
//!
//! Only square classes are modelled. The square-class group of such a tower is
//! `k*/k*^2 x (Z/2)^m`, where the base factor is trivial (quadratically
//! closed), `{±1}` (real closed) or `{1, u}` for a fixed non-square `u`
//! (finite).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest tower depth accepted by [`Field::enumerate`].
pub const MAX_ENUMERATION_DEPTH: usize = 6;
/// Largest tower depth representable at all.
pub const MAX_DEPTH: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    QuadClosed,
    RealClosed,
    /// Finite field with `q` elements, `q` an odd prime power.
    FiniteOdd(u64),
}

impl BaseField {
    /// Whether the base square-class group `k*/k*^2` is non-trivial.
    pub fn has_base_generator(self) -> bool {
        !matches!(self, BaseField::QuadClosed)
    }
}

/// A square class, stored as exponent data over the generators of the group.
///
/// `base` is the exponent of the base generator (`-1` for a real closed base,
/// `u` for a finite base); bit `i` of `vars` is the exponent of `t_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SquareClass {
    pub base: bool,
    pub vars: u32,
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass { base: false, vars: 0 };

    pub fn new(base: bool, vars: u32) -> Self {
        Self { base, vars }
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    /// Whether the class has trivial exponent on every tower variable.
    pub fn is_unit(self) -> bool {
        self.vars == 0
    }
}

impl std::ops::Mul for SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: SquareClass) -> SquareClass {
        SquareClass { base: self.base ^ rhs.base, vars: self.vars ^ rhs.vars }
    }
}

/// A field descriptor: base kind plus the ordered Laurent variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    base: BaseField,
    vars: Vec<String>,
}

pub type FieldRef = Arc<Field>;

fn is_odd_prime_power(q: u64) -> bool {
    if q < 3 || q.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 2;
    }
    if p * p > q {
        return true;
    }
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl Field {
    pub fn new(base: BaseField, vars: Vec<String>) -> Result<Self> {
        if let BaseField::FiniteOdd(q) = base {
            if !is_odd_prime_power(q) {
                return Err(Error::Domain(format!("F{q}: order must be an odd prime power")));
            }
        }
        if vars.len() > MAX_DEPTH {
            return Err(Error::Domain(format!("tower depth {} exceeds {MAX_DEPTH}", vars.len())));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || v == "u" || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Domain(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Domain(format!("duplicate variable {v}")));
            }
        }
        Ok(Self { base, vars })
    }

    /// Tower over `base` with variables `t1..t_depth`.
    pub fn tower(base: BaseField, depth: usize) -> Result<Self> {
        Self::new(base, (1..=depth).map(|i| format!("t{i}")).collect())
    }

    pub fn into_ref(self) -> FieldRef {
        Arc::new(self)
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn depth(&self) -> usize {
        self.vars.len()
    }

    /// Number of F2-generators of the square-class group.
    pub fn rank(&self) -> usize {
        self.depth() + usize::from(self.base.has_base_generator())
    }

    /// The field with the top variable removed (the residue field of the
    /// valuation attached to the top variable).
    pub fn residue_field(&self) -> Result<Field> {
        if self.vars.is_empty() {
            return Err(Error::Domain("residue field needs tower depth >= 1".into()));
        }
        Ok(Self { base: self.base, vars: self.vars[..self.vars.len() - 1].to_vec() })
    }

    /// Bit of the top variable, the uniformizer of the outermost valuation.
    pub fn top_var_bit(&self) -> Option<u32> {
        self.depth().checked_sub(1).map(|i| 1 << i)
    }

    pub fn contains(&self, a: SquareClass) -> bool {
        let var_ok = u64::from(a.vars) >> self.depth() == 0;
        let base_ok = !a.base || self.base.has_base_generator();
        var_ok && base_ok
    }

    pub fn check(&self, a: SquareClass) -> Result<SquareClass> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::FieldMismatch(format!("{a:?}"), self.to_string()))
        }
    }

    /// Product of square classes, both checked to belong to this field.
    pub fn sc_mul(&self, a: SquareClass, b: SquareClass) -> Result<SquareClass> {
        Ok(self.check(a)? * self.check(b)?)
    }

    /// Class of `-1`.
    pub fn minus_one(&self) -> SquareClass {
        let base = match self.base {
            BaseField::QuadClosed => false,
            BaseField::RealClosed => true,
            // Euler: -1 is a square iff (q-1)/2 is even
            BaseField::FiniteOdd(q) => q % 4 == 3,
        };
        SquareClass { base, vars: 0 }
    }

    /// Class of the fixed non-square `u` of a finite base.
    pub fn base_unit(&self) -> Option<SquareClass> {
        match self.base {
            BaseField::FiniteOdd(_) => Some(SquareClass { base: true, vars: 0 }),
            _ => None,
        }
    }

    /// Class of the `i`-th variable (0-based).
    pub fn var(&self, i: usize) -> Result<SquareClass> {
        if i < self.depth() {
            Ok(SquareClass { base: false, vars: 1 << i })
        } else {
            Err(Error::Domain(format!("variable index {i} out of range for {self}")))
        }
    }

    pub fn var_by_name(&self, name: &str) -> Option<SquareClass> {
        self.vars.iter().position(|v| v == name).map(|i| SquareClass { base: false, vars: 1 << i })
    }

    /// All square classes in a deterministic order.
    pub fn enumerate(&self) -> Result<Vec<SquareClass>> {
        if self.depth() > MAX_ENUMERATION_DEPTH {
            return Err(Error::Domain(format!(
                "enumeration limited to depth {MAX_ENUMERATION_DEPTH}, got {}",
                self.depth()
            )));
        }
        let bases: &[bool] = if self.base.has_base_generator() { &[false, true] } else { &[false] };
        let mut out = Vec::with_capacity(1 << self.rank());
        for vars in 0..(1u32 << self.depth()) {
            for &base in bases {
                out.push(SquareClass { base, vars });
            }
        }
        Ok(out)
    }

    /// Certified test that `c` is represented by `<1, -ab>`.
    ///
    /// Sound but incomplete: `true` means a representation is known, `false`
    /// means none was certified. Always certifies `c = 1` and `c = -ab`; over a
    /// finite base every unit class is represented when `a`, `b`, `c` are all
    /// units, since binary forms over finite fields are universal.
    pub fn represented_by_binary(&self, c: SquareClass, a: SquareClass, b: SquareClass) -> bool {
        if !(self.contains(a) && self.contains(b) && self.contains(c)) {
            return false;
        }
        if c.is_one() || c == self.minus_one() * a * b {
            return true;
        }
        matches!(self.base, BaseField::FiniteOdd(_)) && a.is_unit() && b.is_unit() && c.is_unit()
    }

    /// Parses the descriptor grammar `C | R | F<q>` followed by `((name))*`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        let (head, mut rest) = match s.find('(') {
            Some(i) => (&s[..i], &s[i..]),
            None => (s, ""),
        };
        let base = match head {
            "C" => BaseField::QuadClosed,
            "R" => BaseField::RealClosed,
            _ if head.starts_with('F') => {
                let q: u64 = head[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad finite field order in {head:?}")))?;
                BaseField::FiniteOdd(q)
            }
            _ => return Err(Error::Parse(format!("unknown base field {head:?}"))),
        };
        let mut vars = Vec::new();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix("((")
                .ok_or_else(|| Error::Parse(format!("expected '((' in {rest:?}")))?;
            let close = inner.find("))").ok_or_else(|| Error::Parse(format!("unclosed variable in {rest:?}")))?;
            vars.push(inner[..close].trim().to_string());
            rest = &inner[close + 2..];
        }
        Field::new(base, vars).map_err(|e| match e {
            Error::Domain(m) => Error::Parse(m),
            other => other,
        })
    }

    /// Parses a square-class literal: optional `-`, then `1` or a
    /// `*`-separated product of generators (`u`, variable names).
    pub fn parse_square_class(&self, s: &str) -> Result<SquareClass> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, s),
        };
        if body.is_empty() {
            return Err(Error::Parse("empty square class".into()));
        }
        let mut acc = if neg { self.minus_one() } else { SquareClass::ONE };
        if body == "1" {
            return Ok(acc);
        }
        for gen in body.split('*').map(str::trim) {
            let g = if gen == "u" {
                self.base_unit().ok_or_else(|| Error::Parse(format!("'u' needs a finite base, field is {self}")))?
            } else if gen == "1" {
                SquareClass::ONE
            } else {
                self.var_by_name(gen).ok_or_else(|| Error::Parse(format!("unknown generator {gen:?} in {self}")))?
            };
            acc = acc * g;
        }
        Ok(acc)
    }

    /// Renders a square class in the literal grammar.
    pub fn render_square_class(&self, a: SquareClass) -> String {
        let mut parts: Vec<&str> = Vec::new();
        let mut prefix = "";
        if a.base {
            match self.base {
                BaseField::RealClosed => prefix = "-",
                BaseField::FiniteOdd(_) => parts.push("u"),
                BaseField::QuadClosed => {}
            }
        }
        for (i, v) in self.vars.iter().enumerate() {
            if a.vars & (1 << i) != 0 {
                parts.push(v);
            }
        }
        if parts.is_empty() {
            format!("{prefix}1")
        } else {
            format!("{prefix}{}", parts.join("*"))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseField::QuadClosed => write!(f, "C")?,
            BaseField::RealClosed => write!(f, "R")?,
            BaseField::FiniteOdd(q) => write!(f, "F{q}")?,
        }
        for v in &self.vars {
            write!(f, "(({v}))")?;
        }
        Ok(())
    }
}
