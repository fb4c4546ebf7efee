//! Exact truncated power series over a [`CoeffRing`].
//!
//! A series of precision `D` stores the coefficients of degrees `0..=D`;
//! everything above `D` is unknown. Binary operations return the smaller of
//! the two precisions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: CoeffRing> TruncSeries<R> {
    /// Builds a series of precision `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least the constant coefficient".into()));
        }
        if let Some(first) = coeffs.first() {
            if coeffs.iter().any(|c| !c.compatible(first)) {
                return Err(Error::RingMismatch("coefficients from different rings".into()));
            }
        }
        Ok(Self { coeffs })
    }

    /// The constant series `c` at precision `prec`.
    pub fn constant(c: R, prec: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; prec + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The series `t`, using `template` to pick the coefficient ring.
    pub fn variable(template: &R, prec: usize) -> Self {
        let mut s = Self::constant(template.zero_like(), prec);
        if prec >= 1 {
            s.coeffs[1] = template.one_like();
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `t^d`; `None` above the precision.
    pub fn coeff(&self, d: usize) -> Option<&R> {
        self.coeffs.get(d)
    }

    fn template(&self) -> &R {
        &self.coeffs[0]
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.template().compatible(other.template()) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.template(),
                other.template()
            )))
        }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let keep = prec.min(self.precision());
        Self { coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn map<S: CoeffRing>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let prec = self.precision().min(other.precision());
        let coeffs = (0..=prec).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Cauchy product truncated at the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let prec = self.precision().min(other.precision());
        let mut coeffs = vec![self.template().zero_like(); prec + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(prec + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Self { coeffs })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.template().one_like(), self.precision());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn mul_inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::Inversion(format!("constant term {:?} is not a unit", self.coeffs[0])))?;
        let prec = self.precision();
        let mut inv = vec![self.template().zero_like(); prec + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=prec {
            let mut acc = self.template().zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv[k] = acc.mul(&c0_inv).neg();
        }
        Ok(Self { coeffs: inv })
    }

    /// `outer ∘ inner` by Horner's scheme; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_ring(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let prec = self.precision().min(inner.precision());
        let inner = inner.truncate(prec);
        let mut acc = Self::constant(self.coeffs[prec].clone(), prec);
        for k in (0..prec).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f∘g = g∘f = t`, solved degree by degree.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Inversion("constant term must vanish".into()));
        }
        let prec = self.precision();
        let zero = self.template().zero_like();
        if prec == 0 {
            return Ok(Self { coeffs: vec![zero] });
        }
        let lead_inv = self.coeffs[1]
            .unit_inverse()
            .ok_or_else(|| Error::Inversion(format!("linear coefficient {:?} is not a unit", self.coeffs[1])))?;
        let mut g = vec![zero.clone(); prec + 1];
        g[1] = lead_inv.clone();
        // pw[j][m] = [t^m] g^j; column k for j >= 2 only involves g_1..g_{k-1}
        let mut pw = vec![vec![zero.clone(); prec + 1]; prec + 1];
        pw[1][1] = lead_inv.clone();
        for k in 2..=prec {
            let mut rest = zero.clone();
            for j in 2..=k {
                let mut c = zero.clone();
                for m in 1..=k + 1 - j {
                    c = c.add(&g[m].mul(&pw[j - 1][k - m]));
                }
                rest = rest.add(&self.coeffs[j].mul(&c));
                pw[j][k] = c;
            }
            // [t^k] f(g) = f_1 g_k + rest = 0
            g[k] = rest.mul(&lead_inv).neg();
            pw[1][k] = g[k].clone();
        }
        Ok(Self { coeffs: g })
    }

    /// Even and odd parts; `even + odd == self`.
    pub fn even_odd_split(&self) -> (Self, Self) {
        let zero = self.template().zero_like();
        let pick = |parity: usize| Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == parity { c.clone() } else { zero.clone() })
                .collect(),
        };
        (pick(0), pick(1))
    }

    /// `f(c t)` for a scalar `c`.
    pub fn rescale_variable(&self, c: &R) -> Self {
        let mut power = self.template().one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.mul(&power));
            power = power.mul(c);
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl TruncSeries<BigInt> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn int_variable(prec: usize) -> Self {
        Self::variable(&BigInt::zero(), prec)
    }
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// `p_n(t) = t + 2^(n-1) t^2`, the step `x_{n+1} = p_n ∘ x_n`.
pub fn build_p(n: u32, prec: usize) -> Result<TruncSeries<BigInt>> {
    if n == 0 {
        return Err(Error::Domain("p_n needs n >= 1".into()));
    }
    let mut s = TruncSeries::int_variable(prec);
    if prec >= 2 {
        s.coeffs[2] = pow2(n - 1);
    }
    Ok(s)
}

/// `x_n` over Z: `x_1 = t/(1-t)`, `x_{k+1} = x_k + 2^(k-1) x_k^2`.
pub fn build_x(n: u32, prec: usize) -> Result<TruncSeries<BigInt>> {
    if n == 0 {
        return Err(Error::Domain("x_n needs n >= 1".into()));
    }
    let mut coeffs = vec![BigInt::one(); prec + 1];
    coeffs[0] = BigInt::zero();
    let mut x = TruncSeries { coeffs };
    for k in 1..n {
        let sq = x.mul(&x)?;
        x = x.add(&sq.scale(&pow2(k - 1)))?;
    }
    Ok(x)
}

/// `h_n`, the compositional inverse of `x_n`.
///
/// The inverse is solved over Q; a non-integral coefficient is reported as an
/// internal consistency failure rather than rounded.
pub fn build_h(n: u32, prec: usize) -> Result<TruncSeries<BigInt>> {
    let x = build_x(n, prec)?;
    let x_q = x.map(|c| BigRational::from_integer(c.clone()));
    let h_q = x_q.comp_inverse()?;
    let coeffs = h_q
        .coeffs
        .iter()
        .enumerate()
        .map(|(d, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::InternalConsistency(format!("h_{n} has coefficient {c} at degree {d}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries { coeffs })
}

/// Catalan generating function `C(t)`: `C_0 = 1`, `C_{m+1} = Σ C_i C_{m-i}`.
pub fn catalan(prec: usize) -> TruncSeries<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(prec + 1);
    c.push(BigInt::one());
    for m in 0..prec {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    TruncSeries { coeffs: c }
}

/// `t C(-2^(n-1) t)`, the compositional inverse of `p_n`.
pub fn p_inverse_via_catalan(n: u32, prec: usize) -> Result<TruncSeries<BigInt>> {
    if n == 0 {
        return Err(Error::Domain("p_n needs n >= 1".into()));
    }
    let c = catalan(prec).rescale_variable(&-pow2(n - 1));
    let t = TruncSeries::int_variable(prec);
    t.mul(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries<BigInt>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncSeries::from_ints(&[1, 1, 0, 0, 0]);
        let b = TruncSeries::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, -1, 0, 0]);
    }

    #[test]
    fn square_of_geometric_tail() {
        let x1 = build_x(1, 5).unwrap();
        // direct convolution of the all-ones tail
        let mut expected = vec![0i64; 6];
        for i in 1..=5 {
            for j in 1..=5 {
                if i + j <= 5 {
                    expected[i + j] += 1;
                }
            }
        }
        assert_eq!(ints(&x1.mul(&x1).unwrap()), expected);
        assert_eq!(expected, vec![0, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn multiplication_by_one() {
        let s = TruncSeries::from_ints(&[3, -1, 4, 1, -5]);
        let one = TruncSeries::from_ints(&[1, 0, 0, 0, 0]);
        assert_eq!(s.mul(&one).unwrap(), s);
    }

    #[test]
    fn precision_is_the_minimum() {
        let a = TruncSeries::from_ints(&[1, 2, 3]);
        let b = TruncSeries::from_ints(&[1, 1, 1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap().precision(), 2);
        assert_eq!(a.add(&b).unwrap().precision(), 2);
        assert_eq!(b.compose(&TruncSeries::from_ints(&[0, 1, 1])).unwrap().precision(), 2);
    }

    #[test]
    fn compose_identity_and_domain() {
        let f = TruncSeries::from_ints(&[2, 7, 1, 8, 2]);
        let t = TruncSeries::int_variable(4);
        assert_eq!(f.compose(&t).unwrap(), f);
        let bad = TruncSeries::from_ints(&[1, 1, 0, 0, 0]);
        assert_eq!(f.compose(&bad), Err(Error::CompositionDomain));
    }

    #[test]
    fn p1_after_x1_is_x2() {
        let x2 = build_p(1, 4).unwrap().compose(&build_x(1, 4).unwrap()).unwrap();
        // t/(1-t)^2
        assert_eq!(ints(&x2), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn x1_after_h1_is_t() {
        let h1 = TruncSeries::from_ints(&[0, 1, -1, 1, -1]);
        assert_eq!(build_x(1, 4).unwrap().compose(&h1).unwrap(), TruncSeries::int_variable(4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ints(&build_x(1, 4).unwrap().comp_inverse().unwrap()), vec![0, 1, -1, 1, -1]);
        let t = TruncSeries::int_variable(4);
        assert_eq!(t.comp_inverse().unwrap(), t);
        assert_eq!(ints(&build_x(2, 4).unwrap().comp_inverse().unwrap()), vec![0, 1, -2, 5, -14]);
        let bad = TruncSeries::from_ints(&[0, 2, 1]);
        assert!(matches!(bad.comp_inverse(), Err(Error::Inversion(_))));
    }

    #[test]
    fn x_series_examples() {
        assert_eq!(ints(&build_x(1, 4).unwrap()), vec![0, 1, 1, 1, 1]);
        assert_eq!(ints(&build_x(2, 4).unwrap()), vec![0, 1, 2, 3, 4]);
        // x_3 = x_2 + 2 x_2^2 = (t + 2t^2 + 3t^3) + 2(t^2 + 4t^3)
        assert_eq!(ints(&build_x(3, 3).unwrap()), vec![0, 1, 4, 11]);
        assert!(build_x(0, 3).is_err());
    }

    #[test]
    fn h_series_examples() {
        assert_eq!(ints(&build_h(1, 4).unwrap()), vec![0, 1, -1, 1, -1]);
        assert_eq!(ints(&build_h(2, 4).unwrap()), vec![0, 1, -2, 5, -14]);
        assert!(build_h(0, 4).is_err());
    }

    #[test]
    fn x_h_round_trip() {
        for n in 1..=6 {
            let x = build_x(n, 32).unwrap();
            let h = build_h(n, 32).unwrap();
            let t = TruncSeries::int_variable(32);
            assert_eq!(x.compose(&h).unwrap(), t, "x_{n}∘h_{n}");
            assert_eq!(h.compose(&x).unwrap(), t, "h_{n}∘x_{n}");
        }
    }

    #[test]
    fn split_examples() {
        let (a1, b1) = build_x(1, 6).unwrap().even_odd_split();
        assert_eq!(ints(&a1), vec![0, 0, 1, 0, 1, 0, 1]);
        assert_eq!(ints(&b1), vec![0, 1, 0, 1, 0, 1, 0]);
        let (e, o) = TruncSeries::int_variable(3).even_odd_split();
        assert!(e.is_zero());
        assert_eq!(o, TruncSeries::int_variable(3));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(ints(&catalan(4)), vec![1, 1, 2, 5, 14]);
        assert_eq!(ints(&p_inverse_via_catalan(1, 4).unwrap()), vec![0, 1, -1, 2, -5]);
        let p1 = build_p(1, 4).unwrap();
        assert_eq!(p1.compose(&p_inverse_via_catalan(1, 4).unwrap()).unwrap(), TruncSeries::int_variable(4));
    }

    #[test]
    fn mul_inverse_of_one_minus_t() {
        let s = TruncSeries::from_ints(&[1, -1, 0, 0]);
        assert_eq!(ints(&s.mul_inverse().unwrap()), vec![1, 1, 1, 1]);
        assert!(TruncSeries::from_ints(&[2, 1]).mul_inverse().is_err());
    }

    #[test]
    fn empty_series_rejected() {
        assert!(TruncSeries::<BigInt>::from_coeffs(vec![]).is_err());
    }
}
