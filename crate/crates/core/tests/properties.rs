use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use witt_invariants::divided::{f_values, g_values, AValue, Basis, Mode};
use witt_invariants::field::FieldRef;
use witt_invariants::gw::GwElement;
use witt_invariants::invariant::{SymbolicInvariant, UCoeff};
use witt_invariants::sample;
use witt_invariants::series::TruncSeries;
use witt_invariants::witt::WittClass;

fn field(ix: usize, depth: usize) -> FieldRef {
    let fam = sample::field_family(depth);
    fam[ix % fam.len()].clone()
}

fn mode(b: bool) -> Mode {
    if b {
        Mode::W
    } else {
        Mode::H
    }
}

fn invariant(n: u32, mode: Mode, basis: Basis, terms: &[(u32, i64, u32)]) -> SymbolicInvariant {
    SymbolicInvariant::from_coeffs(
        n,
        mode,
        basis,
        terms.iter().map(|&(d, c, e)| (d, UCoeff::int(mode, c).mul(&UCoeff::eps_pow(mode, e)))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(u32, i64, u32)>> {
    prop::collection::vec((0u32..7, -3i64..=3, 0u32..3), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compositional_inverse_is_two_sided(tail in prop::collection::vec(-5i64..=5, 0..10)) {
        let mut c = vec![0, 1];
        c.extend(tail);
        let f = TruncSeries::from_ints(&c);
        let g = f.comp_inverse().unwrap();
        let t = TruncSeries::<BigInt>::int_variable(f.precision());
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
    }

    #[test]
    fn gw_equality_survives_rewrites(ix in 0usize..4, depth in 0usize..3, seed: u64) {
        let k = field(ix, depth);
        let mut rng = sample::rng(seed);
        let mut entries = sample::slots(&k, rng.gen_range(0..6), &mut rng);
        let q = GwElement::diag(&k, &entries).unwrap();
        entries.shuffle(&mut rng);
        let a = sample::class(&k, &mut rng);
        // <a, -a> is hyperbolic, and <a, a> = <1, 1> scaled by a
        let mut rewritten = GwElement::diag(&k, &entries).unwrap()
            .add(&GwElement::diag(&k, &[a, a * k.minus_one()]).unwrap()).unwrap();
        let h = GwElement::hyperbolic(&k);
        prop_assert_eq!(&rewritten, &q.add(&h).unwrap());
        rewritten = rewritten.sub(&h).unwrap();
        prop_assert_eq!(&rewritten, &q);
        let doubled = GwElement::diag(&k, &[a, a]).unwrap();
        prop_assert_eq!(doubled, GwElement::class(&k, a).unwrap().scale(2));
        prop_assert_ne!(q.add(&GwElement::one(&k)).unwrap(), q);
    }

    #[test]
    fn witt_ring_laws(ix in 0usize..4, depth in 0usize..4, seed: u64) {
        let k = field(ix, depth);
        let mut rng = sample::rng(seed);
        let mut w = || sample::form(&k, rng.gen_range(0..5), &mut rng).unwrap().witt();
        let (a, b, c) = (w(), w(), w());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(WittClass::from_gw(&a.to_diagonal()), a);
    }

    #[test]
    fn gw_display_parses_back(ix in 0usize..4, depth in 0usize..3, seed: u64) {
        let k = field(ix, depth);
        let mut rng = sample::rng(seed);
        let x = sample::form(&k, rng.gen_range(0..5), &mut rng).unwrap()
            .sub(&sample::form(&k, rng.gen_range(0..3), &mut rng).unwrap()).unwrap();
        prop_assert_eq!(GwElement::parse(&k, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn values_lie_in_the_expected_filtration(ix in 0usize..4, seed: u64, n in 1u32..3, w: bool) {
        let k = field(ix, 2);
        let m = mode(w);
        let mut rng = sample::rng(seed);
        let q = sample::ideal_element(&k, n as usize, 2, &mut rng).unwrap();
        let fs = f_values(n, 4, &q, m).unwrap();
        let gs = g_values(n, 4, &q, m).unwrap();
        for (d, (f, g)) in fs.iter().zip(&gs).enumerate() {
            let level = n * d as u32;
            for v in [f, g] {
                let inside = match v {
                    AValue::W(x) => x.is_in_ideal(level),
                    AValue::H(x) => x.in_filtration(level),
                };
                prop_assert!(inside, "degree {} value {} outside filtration {}", d, v, level);
            }
        }
        prop_assert_eq!(fs[1].clone(), gs[1].clone());
    }

    #[test]
    fn basis_change_is_an_involution_and_evaluation_agrees(ix in 0usize..4, seed: u64, n in 1u32..3, w: bool, t in terms()) {
        let m = mode(w);
        let a = invariant(n, m, Basis::F, &t);
        let g = a.to_basis(Basis::G);
        prop_assert_eq!(g.to_basis(Basis::F), a.clone());
        let k = field(ix, 2);
        let mut rng = sample::rng(seed);
        let q = sample::ideal_element(&k, n as usize, 2, &mut rng).unwrap();
        prop_assert_eq!(a.evaluate(&q).unwrap(), g.evaluate(&q).unwrap());
    }

    #[test]
    fn product_is_commutative_associative_unital(n in 1u32..4, w: bool, t1 in terms(), t2 in terms(), t3 in terms()) {
        let m = mode(w);
        let (a, b, c) = (invariant(n, m, Basis::F, &t1), invariant(n, m, Basis::G, &t2), invariant(n, m, Basis::F, &t3));
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(ab.clone(), b.product(&a).unwrap().to_basis(Basis::F));
        prop_assert_eq!(ab.product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        let one = SymbolicInvariant::constant(n, m, UCoeff::one(m));
        prop_assert_eq!(a.product(&one).unwrap(), a);
    }

    #[test]
    fn shifting_operators_commute_and_differ_by_their_composite(n in 1u32..4, w: bool, t in terms()) {
        let m = mode(w);
        let a = invariant(n, m, Basis::G, &t);
        let (p, q) = (a.phi(true), a.phi(false));
        prop_assert_eq!(p.phi(false), q.phi(true));
        prop_assert_eq!(p.sub(&q).unwrap(), p.phi(false).scale(&UCoeff::eps_pow(m, n)));
        prop_assert_eq!(a.is_constant(), p.is_zero());
    }

    #[test]
    fn psi_squares_to_minus_delta_psi(n in 1u32..4, w: bool, t in terms()) {
        let m = mode(w);
        let a = invariant(n, m, Basis::F, &t);
        let psi = a.psi_tilde();
        prop_assert_eq!(psi.psi_tilde(), psi.scale(&UCoeff::int(m, -m.delta())));
        prop_assert_eq!(a.psi_tilde_closed_form(), psi);
    }

    #[test]
    fn invariant_display_parses_back(n in 1u32..4, w: bool, g: bool, t in terms()) {
        let m = mode(w);
        let a = invariant(n, m, if g { Basis::G } else { Basis::F }, &t);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(SymbolicInvariant::parse(&a.to_string(), m).unwrap(), a);
    }

    #[test]
    fn scaling_by_a_square_class_is_captured_by_psi(ix in 0usize..4, seed: u64, n in 1u32..3, w: bool, t in terms()) {
        let m = mode(w);
        let a = invariant(n, m, Basis::G, &t);
        let k = field(ix, 2);
        let mut rng = sample::rng(seed);
        let q = sample::ideal_element(&k, n as usize, 2, &mut rng).unwrap();
        let lambda = sample::class(&k, &mut rng);
        prop_assert_eq!(a.evaluate(&q.scale_by_class(lambda).unwrap()).unwrap(), a.evaluate_scaled(lambda, &q).unwrap());
    }
}
