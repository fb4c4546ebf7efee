//! Semi-factorized classes `φ·q` with `φ` an `r`-fold Pfister form, and the
//! descent of invariants along such factorizations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::divided::{AValue, Mode};
use crate::error::{Error, Result};
use crate::field::{FieldRef, SquareClass};
use crate::gw::GwElement;
use crate::invariant::SymbolicInvariant;
use crate::sample;
use crate::witt::WittClass;

/// `<<factor>> · cofactor` viewed as an element of `I^{n,r}`, `r = factor.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizedForm {
    field: FieldRef,
    factor: Vec<SquareClass>,
    cofactor: WittClass,
    n: u32,
}

impl FactorizedForm {
    pub fn new(factor: Vec<SquareClass>, cofactor: WittClass, n: u32) -> Result<Self> {
        let field = cofactor.field().clone();
        for &a in &factor {
            field.check(a)?;
        }
        let r = factor.len() as u32;
        if r > n {
            return Err(Error::Domain(format!("factor length {r} exceeds n = {n}")));
        }
        if n > r && !cofactor.is_in_ideal(n - r) {
            return Err(Error::NotInIdeal(n - r));
        }
        Ok(Self { field, factor, cofactor, n })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn factor(&self) -> &[SquareClass] {
        &self.factor
    }

    pub fn cofactor(&self) -> &WittClass {
        &self.cofactor
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.factor.len()
    }

    /// The Witt class `<<factor>> · cofactor`.
    pub fn product(&self) -> Result<WittClass> {
        pfister_or_one(&self.field, &self.factor)?.mul(&self.cofactor)
    }
}

fn pfister_or_one(field: &FieldRef, slots: &[SquareClass]) -> Result<WittClass> {
    if slots.is_empty() {
        Ok(WittClass::one(field))
    } else {
        WittClass::pfister(field, slots)
    }
}

/// `α^{(t)}`-descent value: `f_t(<<first t slots>>) · α(<<remaining>> · cofactor)`
/// for a normalized invariant `α` of `I^{n-t}`.
pub fn delta_t_eval(x: &FactorizedForm, alpha: &SymbolicInvariant, t: usize) -> Result<AValue> {
    if !alpha.is_normalized() {
        return Err(Error::Domain("descent is defined on normalized invariants".into()));
    }
    if x.r() < t {
        return Err(Error::Domain(format!("factor has {} slots, descent needs {t}", x.r())));
    }
    if alpha.n() + t as u32 != x.n {
        return Err(Error::Domain(format!(
            "invariant of I^{} cannot descend from I^{} by {t}",
            alpha.n(),
            x.n
        )));
    }
    let field = &x.field;
    let head = AValue::symbol(field, alpha.mode(), &x.factor[..t])?;
    let rest = pfister_or_one(field, &x.factor[t..])?.mul(&x.cofactor)?;
    head.mul(&alpha.evaluate(&rest)?)
}

/// Values `c` certified to be represented by `<<ab>> = <1, -ab>`.
pub fn certified_values(field: &FieldRef, a: SquareClass, b: SquareClass) -> Result<Vec<SquareClass>> {
    Ok(field.enumerate()?.into_iter().filter(|&c| field.represented_by_binary(c, a, b)).collect())
}

/// A random cofactor `Σ <x_i> <<c_i>> ψ_i` in `I^level` with every `c_i`
/// represented by `<<ab>>`, so that `<<a>>q0 = <<b>>q0`.
pub fn hoffmann_cofactor<R: Rng>(
    field: &FieldRef,
    a: SquareClass,
    b: SquareClass,
    level: u32,
    terms: usize,
    rng: &mut R,
) -> Result<WittClass> {
    if level == 0 {
        return Err(Error::Domain("cofactor level must be positive".into()));
    }
    let cs = certified_values(field, a, b)?;
    let mut acc = WittClass::zero(field);
    for _ in 0..terms {
        let c = *cs.choose(rng).expect("1 is always certified");
        let mut slots = vec![c];
        slots.extend(sample::slots(field, level as usize - 1, rng));
        let x = sample::class(field, rng);
        acc = acc.add(&WittClass::pfister(field, &slots)?.scale_by_class(x)?)?;
    }
    Ok(acc)
}

fn random_level<R: Rng>(field: &FieldRef, level: u32, rng: &mut R) -> Result<WittClass> {
    if level == 0 {
        Ok(sample::form(field, rng.gen_range(0..=3), rng)?.witt())
    } else {
        sample::ideal_element(field, level as usize, 2, rng)
    }
}

/// Alternative factorizations `(b; q')` of the class of `x = (a; q)` along
/// the two moves certified by the descent theorem: (i) `q' = q + <<c>>q0` with
/// `c` represented by `<<a>>`; (ii) a change of scalar `a -> b` accepted when
/// the Witt products agree exactly. Every output multiplies to the same class.
pub fn alt_factorizations<R: Rng>(x: &FactorizedForm, budget: usize, rng: &mut R) -> Result<Vec<FactorizedForm>> {
    if x.r() != 1 {
        return Err(Error::Domain("alternative factorizations are generated for r = 1".into()));
    }
    let field = x.field.clone();
    let level = x.n - 1;
    let target = x.product()?;
    let mut out = vec![x.clone()];
    let classes = field.enumerate()?;
    let mut attempts = 0;
    while out.len() < budget && attempts < 8 * budget.max(1) {
        attempts += 1;
        let base = out.choose(rng).expect("nonempty").clone();
        let cur = base.factor[0];
        let candidate = if rng.gen_bool(0.5) {
            // move (i)
            let cs = certified_values(&field, cur, SquareClass::ONE)?;
            let c = *cs.choose(rng).expect("1 is always certified");
            let q0 = random_level(&field, level.saturating_sub(1), rng)?;
            let shift = WittClass::pfister(&field, &[c])?.mul(&q0)?;
            FactorizedForm::new(vec![cur], base.cofactor.add(&shift)?, x.n)?
        } else {
            // move (ii)
            let b = *classes.choose(rng).expect("nonempty");
            FactorizedForm::new(vec![b], base.cofactor.clone(), x.n)?
        };
        if candidate.product()? == target && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    debug_assert!(out.iter().all(|y| y.product().map(|p| p == target).unwrap_or(false)));
    Ok(out)
}

/// Checks `<<a>> λ^k(q) = <<b>> λ^k(q)` in `GW`, `k >= 1`, for
/// `q = Σ <x_i> (<1> - <c_i>)` with each `c_i` represented by `<<ab>>`.
pub fn lemma_factor_check(
    field: &FieldRef,
    a: SquareClass,
    b: SquareClass,
    terms: &[(SquareClass, SquareClass)],
    k: usize,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::Domain("the factor lemma needs k >= 1".into()));
    }
    let mut q = GwElement::zero(field);
    for &(x, c) in terms {
        if !field.represented_by_binary(c, a, b) {
            return Err(Error::Domain(format!(
                "{} is not certified to be represented by <<{}>>",
                field.render_square_class(c),
                field.render_square_class(a * b)
            )));
        }
        q = q.add(&GwElement::gpfister(field, &[c])?.mul_class(x)?)?;
    }
    let lk = q.lambda_power(k)?;
    let left = GwElement::pfister(field, &[a])?.mul(&lk)?;
    let right = GwElement::pfister(field, &[b])?.mul(&lk)?;
    left.gw_eq(&right)
}

/// `ε^{t(d-1)} f_t(φ) f_{n-t}^d(q')`, the predicted value of `f_n^d(φ q')`.
pub fn divisibility_prediction(phi: &[SquareClass], q: &WittClass, n: u32, d: u32, mode: Mode) -> Result<AValue> {
    let t = phi.len() as u32;
    if t >= n {
        return Err(Error::Domain(format!("need t < n, got t={t}, n={n}")));
    }
    let field = q.field();
    let inner = crate::divided::eval_f(n - t, d as usize, q, mode)?;
    let coeff = AValue::eps_pow(field, mode, t * d.saturating_sub(1));
    coeff.mul(&AValue::symbol(field, mode, phi)?)?.mul(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::field_ref;
    use crate::divided::{eval_f, Basis};

    fn sc(f: &FieldRef, s: &str) -> SquareClass {
        f.parse_square_class(s).unwrap()
    }

    #[test]
    fn descent_examples() {
        let f = field_ref("R((t1))((t2))").unwrap();
        let c = sc(&f, "t1");
        let q = WittClass::parse(&f, "pf(t2,-1) + pf(t1*t2,-t2)").unwrap();
        let x = FactorizedForm::new(vec![c], q.clone(), 3).unwrap();
        for mode in [Mode::W, Mode::H] {
            for d in 1..=3 {
                let alpha = SymbolicInvariant::basis_element(2, mode, Basis::F, d);
                let v = delta_t_eval(&x, &alpha, 1).unwrap();
                let expected = AValue::symbol(&f, mode, &[c]).unwrap().mul(&eval_f(2, d as usize, &q, mode).unwrap()).unwrap();
                assert_eq!(v, expected);
                let alpha0 = SymbolicInvariant::basis_element(3, mode, Basis::F, d);
                assert_eq!(delta_t_eval(&x, &alpha0, 0).unwrap(), alpha0.evaluate(&x.product().unwrap()).unwrap());
            }
            let zero = FactorizedForm::new(vec![c], WittClass::zero(&f), 3).unwrap();
            let alpha = SymbolicInvariant::basis_element(2, mode, Basis::G, 2);
            assert!(delta_t_eval(&zero, &alpha, 1).unwrap().is_zero());
            let unnormalized = SymbolicInvariant::basis_element(2, mode, Basis::G, 0);
            assert!(delta_t_eval(&x, &unnormalized, 1).is_err());
            assert!(delta_t_eval(&x, &alpha, 2).is_err());
        }
    }

    #[test]
    fn alternatives_multiply_to_the_same_class() {
        let f = field_ref("F3((t1))((t2))").unwrap();
        let mut rng = sample::rng(11);
        let a = sc(&f, "t1");
        let b = sc(&f, "u*t2");
        let q0 = hoffmann_cofactor(&f, a, b, 2, 3, &mut rng).unwrap();
        let x = FactorizedForm::new(vec![a], q0, 3).unwrap();
        let alts = alt_factorizations(&x, 12, &mut rng).unwrap();
        assert_eq!(alts[0], x);
        assert!(alts.len() > 1);
        let target = x.product().unwrap();
        for y in &alts {
            assert_eq!(y.product().unwrap(), target);
        }
        // (a; q') and (a; q' + <<-a>>ψ)
        let psi = WittClass::pfister(&f, &[sc(&f, "t2")]).unwrap();
        let q = WittClass::pfister(&f, &[sc(&f, "u"), sc(&f, "t1*t2")]).unwrap();
        let shifted = q.add(&WittClass::pfister(&f, &[f.minus_one() * a]).unwrap().mul(&psi).unwrap()).unwrap();
        let p1 = FactorizedForm::new(vec![a], q, 3).unwrap().product().unwrap();
        let p2 = FactorizedForm::new(vec![a], shifted, 3).unwrap().product().unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn lemma_examples() {
        let f = field_ref("R((t1))((t2))").unwrap();
        let (a, b) = (sc(&f, "t1"), sc(&f, "-t2"));
        assert!(lemma_factor_check(&f, a, b, &[(sc(&f, "t2"), SquareClass::ONE)], 2).unwrap());
        let c = f.minus_one() * a * b;
        for k in 1..=4 {
            for x in f.enumerate().unwrap() {
                assert!(lemma_factor_check(&f, a, b, &[(x, c), (sc(&f, "t1"), c)], k).unwrap());
            }
            assert!(lemma_factor_check(&f, a, a, &[(b, f.minus_one())], k).unwrap());
        }
        assert!(lemma_factor_check(&f, a, b, &[(a, sc(&f, "t1"))], 2).is_err());
    }

    #[test]
    fn divisibility_example() {
        let f = field_ref("R((t1))((t2))").unwrap();
        let phi = [sc(&f, "t1")];
        let q = WittClass::parse(&f, "pf(-1,t2) - pf(t2,t1*t2)").unwrap();
        let prod = WittClass::pfister(&f, &phi).unwrap().mul(&q).unwrap();
        for mode in [Mode::W, Mode::H] {
            for d in 0..=4u32 {
                let direct = eval_f(3, d as usize, &prod, mode).unwrap();
                if d == 0 {
                    continue;
                }
                assert_eq!(direct, divisibility_prediction(&phi, &q, 3, d, mode).unwrap(), "{mode} d={d}");
            }
        }
    }
}
