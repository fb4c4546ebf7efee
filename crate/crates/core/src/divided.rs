//! The divided-power operations `π_n^d` on `GW`, the invariants `f_n^d` and
//! `g_n^d` with values in `A = W` or `A = H`, and the maps `h^d` (`P^d` for
//! `W`, Stiefel-Whitney classes for `H`).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohClass;
use crate::combinat::ext_binom;
use crate::error::{Error, Result};
use crate::field::{FieldRef, SquareClass};
use crate::gw::GwElement;
use crate::ring::CoeffRing;
use crate::series::{build_h, TruncSeries};
use crate::witt::WittClass;

/// The target functor: Witt ring or mod-2 cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    W,
    H,
}

impl Mode {
    /// `δ(A)`: 1 for `W`, 0 for `H`.
    pub fn delta(self) -> i64 {
        match self {
            Mode::W => 1,
            Mode::H => 0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "W" | "w" => Ok(Mode::W),
            "H" | "h" => Ok(Mode::H),
            other => Err(Error::Parse(format!("unknown mode {other:?} (expected W or H)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::W => "W",
            Mode::H => "H",
        })
    }
}

/// The two bases of invariants: `f_n^d` and `g_n^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    F,
    G,
}

/// An element of `A(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AValue {
    W(WittClass),
    H(CohClass),
}

impl AValue {
    pub fn zero(field: &FieldRef, mode: Mode) -> Self {
        match mode {
            Mode::W => AValue::W(WittClass::zero(field)),
            Mode::H => AValue::H(CohClass::zero(field)),
        }
    }

    pub fn one(field: &FieldRef, mode: Mode) -> Self {
        match mode {
            Mode::W => AValue::W(WittClass::one(field)),
            Mode::H => AValue::H(CohClass::one(field)),
        }
    }

    /// `{a1,...,ak}`: the Pfister class or the Galois symbol; `{}` is 1.
    pub fn symbol(field: &FieldRef, mode: Mode, args: &[SquareClass]) -> Result<Self> {
        if args.is_empty() {
            return Ok(Self::one(field, mode));
        }
        Ok(match mode {
            Mode::W => AValue::W(WittClass::pfister(field, args)?),
            Mode::H => AValue::H(CohClass::symbol(field, args)?),
        })
    }

    /// `{-1}^j`.
    pub fn eps_pow(field: &FieldRef, mode: Mode, j: u32) -> Self {
        let m1 = vec![field.minus_one(); j as usize];
        Self::symbol(field, mode, &m1).expect("-1 is in every field")
    }

    /// `f_n(q)`: `q` itself for `W`, `e_n(q)` for `H`.
    pub fn from_ideal(q: &WittClass, n: u32, mode: Mode) -> Result<Self> {
        if !q.is_in_ideal(n) {
            return Err(Error::NotInIdeal(n));
        }
        Ok(match mode {
            Mode::W => AValue::W(q.clone()),
            Mode::H => AValue::H(q.e_n(n)?),
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            AValue::W(_) => Mode::W,
            AValue::H(_) => Mode::H,
        }
    }

    pub fn field(&self) -> &FieldRef {
        match self {
            AValue::W(w) => w.field(),
            AValue::H(h) => h.field(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AValue::W(w) => w.is_zero(),
            AValue::H(h) => h.is_zero(),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::RingMismatch(format!("{} value against {} value", self.mode(), other.mode()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AValue::W(a), AValue::W(b)) => Ok(AValue::W(a.add(b)?)),
            (AValue::H(a), AValue::H(b)) => Ok(AValue::H(a.add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            AValue::W(a) => AValue::W(a.neg()),
            AValue::H(_) => self.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AValue::W(a), AValue::W(b)) => Ok(AValue::W(a.mul(b)?)),
            (AValue::H(a), AValue::H(b)) => Ok(AValue::H(a.cup(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        match self {
            AValue::W(a) => AValue::W(a.scale(n)),
            AValue::H(a) => {
                if n % 2 == 0 {
                    AValue::H(CohClass::zero(a.field()))
                } else {
                    self.clone()
                }
            }
        }
    }

    /// Residue along the top variable: second residue in `W`, cohomological
    /// residue in `H`.
    pub fn residue(&self) -> Result<Self> {
        Ok(match self {
            AValue::W(a) => AValue::W(a.second_residue()?),
            AValue::H(a) => AValue::H(a.residue()?),
        })
    }

    /// Image in a larger tower.
    pub fn embed(&self, field: &FieldRef) -> Result<Self> {
        Ok(match self {
            AValue::W(a) => AValue::W(a.embed(field)?),
            AValue::H(a) => AValue::H(a.embed(field)?),
        })
    }
}

impl fmt::Display for AValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AValue::W(a) => write!(f, "{a}"),
            AValue::H(a) => write!(f, "{a}"),
        }
    }
}

impl CoeffRing for AValue {
    fn zero_like(&self) -> Self {
        Self::zero(self.field(), self.mode())
    }
    fn one_like(&self) -> Self {
        Self::one(self.field(), self.mode())
    }
    fn add(&self, other: &Self) -> Self {
        AValue::add(self, other).expect("values of different targets")
    }
    fn neg(&self) -> Self {
        AValue::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        AValue::mul(self, other).expect("values of different targets")
    }
    fn is_zero(&self) -> bool {
        AValue::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.one_like().scale(n)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let one = self.one_like();
        if *self == one || *self == one.neg() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        self.mode() == other.mode() && self.field() == other.field()
    }
}

type HTable = Arc<Vec<Vec<BigInt>>>;

/// `T[j][k] = [t^j] h_n(t)^k` for `j, k <= prec`, cached per `(n, prec)`.
fn h_power_table(n: u32, prec: usize) -> Result<HTable> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), HTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache poisoned").get(&(n, prec)) {
        return Ok(t.clone());
    }
    let h = build_h(n, prec)?;
    let mut table = vec![vec![BigInt::from(0); prec + 1]; prec + 1];
    let mut power = TruncSeries::constant(BigInt::from(1), prec);
    for k in 0..=prec {
        for (j, row) in table.iter_mut().enumerate() {
            row[k] = power.coeff(j).expect("precision").clone();
        }
        power = power.mul(&h)?;
    }
    let table = Arc::new(table);
    cache.lock().expect("cache poisoned").insert((n, prec), table.clone());
    Ok(table)
}

fn small(c: &BigInt) -> Result<i64> {
    i64::try_from(c).map_err(|_| Error::Domain(format!("coefficient {c} exceeds i64")))
}

/// `π_n^0(x), ..., π_n^prec(x)`: the coefficients of `λ_t(x)∘h_n`.
pub fn pi_series(n: u32, prec: usize, x: &GwElement) -> Result<Vec<GwElement>> {
    if n == 0 {
        return Err(Error::Domain("π_n needs n >= 1".into()));
    }
    let table = h_power_table(n, prec)?;
    let lambdas = x.lambda_series(prec)?;
    let mut out = Vec::with_capacity(prec + 1);
    for row in table.iter() {
        let mut acc = GwElement::zero(x.field());
        for (k, c) in row.iter().enumerate() {
            if c.sign() != num_bigint::Sign::NoSign {
                acc = acc.add(&lambdas.coeff(k).expect("precision").scale(small(c)?))?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn eval_pi(n: u32, d: usize, x: &GwElement) -> Result<GwElement> {
    Ok(pi_series(n, d, x)?.pop().expect("nonempty"))
}

/// `f_n^0(q), ..., f_n^dmax(q)`.
pub fn f_values(n: u32, dmax: usize, q: &WittClass, mode: Mode) -> Result<Vec<AValue>> {
    if n == 0 {
        return Err(Error::Domain("f_n needs n >= 1".into()));
    }
    if !q.is_in_ideal(n) {
        return Err(Error::NotInIdeal(n));
    }
    let pis = pi_series(n, dmax, &q.hat_lift()?)?;
    pis.iter()
        .enumerate()
        .map(|(d, p)| {
            let w = p.witt();
            match mode {
                Mode::W => Ok(AValue::W(w)),
                Mode::H => Ok(AValue::H(w.e_n(n * d as u32)?)),
            }
        })
        .collect()
}

pub fn eval_f(n: u32, d: usize, q: &WittClass, mode: Mode) -> Result<AValue> {
    Ok(f_values(n, d, q, mode)?.pop().expect("nonempty"))
}

/// Coefficient of `{-1}^{n(d-k)} f_n^k` in `g_n^d`.
pub fn g_in_f(d: u32, k: u32) -> i64 {
    if d == 0 {
        return i64::from(k == 0);
    }
    let (d, k) = (i64::from(d), i64::from(k));
    if k <= d / 2 || k > d {
        return 0;
    }
    ext_binom((d - 1) / 2, k - d / 2 - 1)
}

/// Coefficient of `{-1}^{n(d-k)} g_n^k` in `f_n^d`.
pub fn f_in_g(d: u32, k: u32) -> i64 {
    if d == 0 {
        return i64::from(k == 0);
    }
    if d == 1 {
        // the displayed formula degenerates to binom(-1,-1) here; f^1 = g^1
        return i64::from(k == 1);
    }
    let (d, k) = (i64::from(d), i64::from(k));
    if k < 1 || k > d {
        return 0;
    }
    let sign = if (d - k) % 2 == 0 { 1 } else { -1 };
    sign * ext_binom(d - (k + 1) / 2 - 1, k / 2 - 1)
}

/// Rewrites `f`-values as `g`-values: `g^d = Σ_k g_in_f(d,k) {-1}^{n(d-k)} f^k`.
pub fn g_from_f(n: u32, fvals: &[AValue]) -> Result<Vec<AValue>> {
    let first = fvals.first().ok_or_else(|| Error::Domain("empty value list".into()))?;
    let (field, mode) = (first.field().clone(), first.mode());
    let mut out = Vec::with_capacity(fvals.len());
    for d in 0..fvals.len() as u32 {
        let mut acc = AValue::zero(&field, mode);
        for k in 0..=d {
            let c = g_in_f(d, k);
            if c != 0 {
                let term = AValue::eps_pow(&field, mode, n * (d - k)).mul(&fvals[k as usize])?.scale(c);
                acc = acc.add(&term)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `g_n^0(q), ..., g_n^dmax(q)`.
pub fn g_values(n: u32, dmax: usize, q: &WittClass, mode: Mode) -> Result<Vec<AValue>> {
    g_from_f(n, &f_values(n, dmax, q, mode)?)
}

pub fn eval_g(n: u32, d: usize, q: &WittClass, mode: Mode) -> Result<AValue> {
    Ok(g_values(n, d, q, mode)?.pop().expect("nonempty"))
}

/// `h^0(x), ..., h^prec(x)` from the group law `h_t(<a>) = 1 + {a}t`.
pub fn sw_series(prec: usize, x: &GwElement, mode: Mode) -> Result<Vec<AValue>> {
    let field = x.field();
    let one = AValue::one(field, mode);
    let mut pos = TruncSeries::constant(one.clone(), prec);
    let mut neg = TruncSeries::constant(one.clone(), prec);
    for (a, m) in x.terms() {
        let mut coeffs = vec![AValue::zero(field, mode); prec + 1];
        coeffs[0] = one.clone();
        if prec >= 1 {
            coeffs[1] = AValue::symbol(field, mode, &[a])?;
        }
        let linear = TruncSeries::from_coeffs(coeffs)?;
        let factor = linear.pow(m.unsigned_abs() as u32)?;
        if m > 0 {
            pos = pos.mul(&factor)?;
        } else {
            neg = neg.mul(&factor)?;
        }
    }
    Ok(pos.mul(&neg.mul_inverse()?)?.into_coeffs())
}

pub fn eval_sw(d: usize, x: &GwElement, mode: Mode) -> Result<AValue> {
    Ok(sw_series(d, x, mode)?.pop().expect("nonempty"))
}

/// `P^d_m(q) = Σ_k (-1)^k binom(m-k, d-k) λ^k(q)` for an actual form `q` of
/// dimension `m`, computed in `GW`.
pub fn eval_p(d: usize, q: &GwElement) -> Result<GwElement> {
    if !q.is_form() {
        return Err(Error::Domain("P^d_m is defined on forms, not virtual classes".into()));
    }
    let m = q.dim();
    let lambdas = q.lambda_series(d)?;
    let mut acc = GwElement::zero(q.field());
    for k in 0..=d {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = sign * ext_binom(m - k as i64, (d - k) as i64);
        acc = acc.add(&lambdas.coeff(k).expect("precision").scale(c))?;
    }
    Ok(acc)
}

/// `f_1^d(q)` or `g_1^d(q)` through the expansion in the `h_m^i(q)`, for a
/// form `q` of even dimension `m = 2r`.
pub fn eval_fixed_dim(d: usize, q: &GwElement, mode: Mode, basis: Basis) -> Result<AValue> {
    if !q.is_form() {
        return Err(Error::Domain("fixed-dimension expansion needs an actual form".into()));
    }
    let m = q.dim();
    if m % 2 != 0 {
        return Err(Error::NotInIdeal(1));
    }
    let r = m / 2;
    let hs = sw_series(d, q, mode)?;
    let field = q.field();
    let d_i = d as i64;
    let mut acc = AValue::zero(field, mode);
    for (i, h) in hs.iter().enumerate() {
        let i_i = i as i64;
        let top = match basis {
            Basis::F => r - i_i,
            Basis::G => r - i_i - 1 + (d_i + 1) / 2,
        };
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = sign * ext_binom(top, d_i - i_i);
        if c != 0 {
            let term = AValue::eps_pow(field, mode, (d - i) as u32).mul(h)?.scale(c);
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}
