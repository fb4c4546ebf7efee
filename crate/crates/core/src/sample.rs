//! Seeded random generation of square classes, Pfister forms and elements of
//! `I^n`. Every sampler takes the generator explicitly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{BaseField, Field, FieldRef, SquareClass};
use crate::gw::GwElement;
use crate::witt::WittClass;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Towers of the given depth over each supported kind of base field.
pub fn field_family(depth: usize) -> Vec<FieldRef> {
    [BaseField::QuadClosed, BaseField::RealClosed, BaseField::FiniteOdd(3), BaseField::FiniteOdd(5)]
        .into_iter()
        .map(|b| Field::tower(b, depth).expect("small towers are valid").into_ref())
        .collect()
}

pub fn class<R: Rng>(field: &Field, rng: &mut R) -> SquareClass {
    let base = field.base().has_base_generator() && rng.gen_bool(0.5);
    let vars = if field.depth() == 0 { 0 } else { rng.gen_range(0..(1u32 << field.depth())) };
    SquareClass::new(base, vars)
}

/// A unit square class (no uniformizer part).
pub fn unit_class<R: Rng>(field: &Field, rng: &mut R) -> SquareClass {
    SquareClass::new(field.base().has_base_generator() && rng.gen_bool(0.5), 0)
}

pub fn slots<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Vec<SquareClass> {
    (0..n).map(|_| class(field, rng)).collect()
}

pub fn pfister<R: Rng>(field: &FieldRef, n: usize, rng: &mut R) -> Result<WittClass> {
    WittClass::pfister(field, &slots(field, n, rng))
}

/// `Σ_{i<s} φ_i - Σ_{j<t} ψ_j` with random `n`-fold Pfister forms.
pub fn pfister_combination<R: Rng>(field: &FieldRef, n: usize, s: usize, t: usize, rng: &mut R) -> Result<WittClass> {
    let mut acc = WittClass::zero(field);
    for _ in 0..s {
        acc = acc.add(&pfister(field, n, rng)?)?;
    }
    for _ in 0..t {
        acc = acc.sub(&pfister(field, n, rng)?)?;
    }
    Ok(acc)
}

/// A random element of `I^n`: a short signed sum of scaled `n`-fold Pfister
/// forms, which reaches every class of `I^n`.
pub fn ideal_element<R: Rng>(field: &FieldRef, n: usize, max_terms: usize, rng: &mut R) -> Result<WittClass> {
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = WittClass::zero(field);
    for _ in 0..terms {
        let phi = pfister(field, n, rng)?.scale_by_class(class(field, rng))?;
        acc = if rng.gen_bool(0.5) { acc.add(&phi)? } else { acc.sub(&phi)? };
    }
    Ok(acc)
}

/// An element of `I^n` with a unit diagonalization (unramified along the top
/// variable).
pub fn unramified_ideal_element<R: Rng>(field: &FieldRef, n: usize, max_terms: usize, rng: &mut R) -> Result<WittClass> {
    let top = field.top_var_bit().unwrap_or(0);
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = WittClass::zero(field);
    let pick = |rng: &mut R| {
        let c = class(field, rng);
        SquareClass::new(c.base, c.vars & !top)
    };
    for _ in 0..terms {
        let sl: Vec<SquareClass> = (0..n).map(|_| pick(rng)).collect();
        let phi = WittClass::pfister(field, &sl)?.scale_by_class(pick(rng))?;
        acc = if rng.gen_bool(0.5) { acc.add(&phi)? } else { acc.sub(&phi)? };
    }
    Ok(acc)
}

/// A random diagonal form of the given dimension.
pub fn form<R: Rng>(field: &FieldRef, dim: usize, rng: &mut R) -> Result<GwElement> {
    GwElement::diag(field, &slots(field, dim, rng))
}
