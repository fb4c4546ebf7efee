//! Named identity suites. Each suite samples inputs from a seeded generator,
//! checks an identity against an independently computed side, and reports
//! the number of cases and the first counterexample.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{field_ref, CohClass};
use crate::combinat::multinomial;
use crate::divided::{
    eval_f, eval_fixed_dim, f_values, g_values, pi_series, AValue, Basis, Mode,
};
use crate::error::{Error, Result};
use crate::factorized::{
    alt_factorizations, delta_t_eval, divisibility_prediction, hoffmann_cofactor, lemma_factor_check,
    FactorizedForm,
};
use crate::field::{BaseField, Field, FieldRef, SquareClass};
use crate::gw::GwElement;
use crate::invariant::{SymbolicInvariant, UCoeff};
use crate::sample;
use crate::series::{build_h, build_p, build_x, p_inverse_via_catalan, TruncSeries};
use crate::witt::WittClass;

pub const SUITES: [&str; 13] = [
    "series",
    "lambda",
    "pi",
    "f-axioms",
    "g-bounds",
    "classify",
    "product",
    "restrict",
    "simil",
    "ram",
    "fixed-dim",
    "coh-ops",
    "delta1",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// A single field descriptor; `None` runs over the default tower family.
    pub field: Option<String>,
    pub prec: usize,
    pub n_max: u32,
    pub d_max: u32,
    pub samples: usize,
    pub seed: u64,
    /// `None` runs both targets.
    pub mode: Option<Mode>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { field: None, prec: 32, n_max: 3, d_max: 6, samples: 100, seed: 0, mode: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub cases_total: usize,
    pub cases_failed: usize,
    pub first_failure: Option<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }
}

/// Runs a suite by name. Unknown names and invalid configurations are errors;
/// failing identities are reported, not raised. `samples = 0` runs nothing.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::Domain(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))));
    }
    if cfg.n_max == 0 || cfg.d_max == 0 {
        return Err(Error::Domain("n_max and d_max must be positive".into()));
    }
    let pinned = cfg.field.as_deref().map(field_ref).transpose()?;
    let mut ctx = Ctx {
        cfg,
        pinned,
        rng: sample::rng(cfg.seed ^ salt(name)),
        tally: Tally::default(),
    };
    if cfg.samples > 0 {
        match name {
            "series" => series(&mut ctx)?,
            "lambda" => lambda(&mut ctx)?,
            "pi" => pi(&mut ctx)?,
            "f-axioms" => f_axioms(&mut ctx)?,
            "g-bounds" => g_bounds(&mut ctx)?,
            "classify" => classify(&mut ctx)?,
            "product" => product(&mut ctx)?,
            "restrict" => restrict(&mut ctx)?,
            "simil" => simil(&mut ctx)?,
            "ram" => ram(&mut ctx)?,
            "fixed-dim" => fixed_dim(&mut ctx)?,
            "coh-ops" => coh_ops(&mut ctx)?,
            "delta1" => delta1(&mut ctx)?,
            _ => unreachable!("checked above"),
        }
    }
    let t = ctx.tally;
    Ok(Report {
        suite: name.to_string(),
        config: cfg.clone(),
        cases_total: t.total,
        cases_failed: t.failed,
        first_failure: t.first,
    })
}

fn salt(name: &str) -> u64 {
    // FNV-1a, so every suite draws its own stream from the same seed
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

#[derive(Default)]
struct Tally {
    total: usize,
    failed: usize,
    first: Option<Failure>,
}

impl Tally {
    fn record(&mut self, inputs: impl FnOnce() -> String, outcome: Option<(String, String)>) {
        self.total += 1;
        if let Some((expected, got)) = outcome {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(Failure { inputs: inputs(), expected, got });
            }
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, inputs: impl FnOnce() -> String, outcome: Result<(T, T)>) {
        let o = match outcome {
            Ok((e, g)) if e == g => None,
            Ok((e, g)) => Some((e.to_string(), g.to_string())),
            Err(err) => Some(("a value".into(), format!("error: {err}"))),
        };
        self.record(inputs, o);
    }

    fn holds(&mut self, inputs: impl FnOnce() -> String, claim: &str, outcome: Result<bool>) {
        let o = match outcome {
            Ok(true) => None,
            Ok(false) => Some((claim.to_string(), "violated".into())),
            Err(err) => Some((claim.to_string(), format!("error: {err}"))),
        };
        self.record(inputs, o);
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    pinned: Option<FieldRef>,
    rng: ChaCha8Rng,
    tally: Tally,
}

impl Ctx<'_> {
    /// The pinned field, or the default family at the given depths.
    fn fields(&self, depths: std::ops::RangeInclusive<usize>) -> Vec<FieldRef> {
        match &self.pinned {
            Some(f) => vec![f.clone()],
            None => depths.flat_map(sample::field_family).collect(),
        }
    }

    fn ramified_fields(&self, depths: std::ops::RangeInclusive<usize>) -> Result<Vec<FieldRef>> {
        let fs = self.fields(depths);
        if fs.iter().any(|f| f.depth() == 0) {
            return Err(Error::Domain("this suite needs a tower of depth >= 1".into()));
        }
        Ok(fs)
    }

    fn modes(&self) -> Vec<Mode> {
        match self.cfg.mode {
            Some(m) => vec![m],
            None => vec![Mode::W, Mode::H],
        }
    }

    fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs.choose(&mut self.rng).expect("nonempty choice").clone()
    }

    fn n(&mut self, cap: u32) -> u32 {
        self.rng.gen_range(1..=self.cfg.n_max.min(cap))
    }

    fn d_max(&self) -> usize {
        self.cfg.d_max as usize
    }
}

fn show_ints(s: &TruncSeries<BigInt>) -> String {
    s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn render(field: &Field, xs: &[SquareClass]) -> String {
    xs.iter().map(|&a| field.render_square_class(a)).collect::<Vec<_>>().join(",")
}

fn random_ucoeff(mode: Mode, rng: &mut ChaCha8Rng) -> UCoeff {
    match mode {
        Mode::W => UCoeff::int(mode, rng.gen_range(-3..=3)),
        Mode::H => (0..3)
            .filter(|_| rng.gen_bool(0.5))
            .fold(UCoeff::zero(mode), |acc, j| acc.add(&UCoeff::eps_pow(mode, j))),
    }
}

/// A random invariant with at most `support` terms of degree at most `max_deg`.
fn random_invariant(n: u32, mode: Mode, basis: Basis, max_deg: u32, support: usize, rng: &mut ChaCha8Rng) -> SymbolicInvariant {
    let terms: Vec<(u32, UCoeff)> =
        (0..rng.gen_range(0..=support)).map(|_| (rng.gen_range(0..=max_deg), random_ucoeff(mode, rng))).collect();
    SymbolicInvariant::from_coeffs(n, mode, basis, terms)
}

fn random_normalized(n: u32, mode: Mode, max_deg: u32, rng: &mut ChaCha8Rng) -> SymbolicInvariant {
    let terms: Vec<(u32, UCoeff)> =
        (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(1..=max_deg.max(1)), random_ucoeff(mode, rng))).collect();
    SymbolicInvariant::from_coeffs(n, mode, Basis::F, terms)
}

/// `Σ_{|S| = d} Π_{i∈S} x_i` by enumerating subsets.
fn subset_sum<T: Clone>(
    xs: &[T],
    d: usize,
    one: T,
    zero: T,
    mul: impl Fn(&T, &T) -> Result<T>,
    add: impl Fn(&T, &T) -> Result<T>,
) -> Result<T> {
    let mut acc = zero;
    for mask in 0u32..(1 << xs.len()) {
        if mask.count_ones() as usize != d {
            continue;
        }
        let mut p = one.clone();
        for (i, x) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = mul(&p, x)?;
            }
        }
        acc = add(&acc, &p)?;
    }
    Ok(acc)
}

fn av_subset_sum(field: &FieldRef, mode: Mode, xs: &[AValue], d: usize) -> Result<AValue> {
    subset_sum(xs, d, AValue::one(field, mode), AValue::zero(field, mode), |a, b| a.mul(b), |a, b| a.add(b))
}

fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `n`-fold Pfister slots together with the class they define.
fn pfister_with_slots(field: &FieldRef, n: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<SquareClass>, WittClass)> {
    let s = sample::slots(field, n, rng);
    let q = WittClass::pfister(field, &s)?;
    Ok((s, q))
}

fn series(ctx: &mut Ctx) -> Result<()> {
    let prec = ctx.cfg.prec;
    let n_top = ctx.cfg.n_max.max(6);
    let t = TruncSeries::<BigInt>::int_variable(prec);
    let h1: Vec<i64> = (0..=prec).map(|d| if d == 0 { 0 } else { sign(d - 1) }).collect();
    ctx.tally.eq(
        || format!("h_1 = t/(1+t), prec={prec}"),
        build_h(1, prec).map(|h| (show_ints(&TruncSeries::from_ints(&h1)), show_ints(&h))),
    );
    for n in 1..=n_top {
        let inputs = || format!("n={n}, prec={prec}");
        ctx.tally.holds(inputs, "h_n has integer coefficients", build_h(n, prec).map(|_| true));
        let (Ok(x), Ok(h)) = (build_x(n, prec), build_h(n, prec)) else { continue };
        ctx.tally.eq(|| format!("x∘h, n={n}, prec={prec}"), x.compose(&h).map(|c| (show_ints(&t), show_ints(&c))));
        ctx.tally.eq(|| format!("h∘x, n={n}, prec={prec}"), h.compose(&x).map(|c| (show_ints(&t), show_ints(&c))));
        // p_n^{-1} from the Catalan series, checked against p_n and against
        // the step h_{n+1} = h_n ∘ p_n^{-1}
        ctx.tally.eq(
            || format!("p∘tC(-2^(n-1)t), n={n}, prec={prec}"),
            (|| {
                let c = build_p(n, prec)?.compose(&p_inverse_via_catalan(n, prec)?)?;
                Ok((show_ints(&t), show_ints(&c)))
            })(),
        );
        if n < n_top {
            ctx.tally.eq(
                || format!("h_(n+1) = h_n∘p_n^-1, n={n}, prec={prec}"),
                (|| {
                    let step = h.compose(&p_inverse_via_catalan(n, prec)?)?;
                    Ok((show_ints(&step), show_ints(&build_h(n + 1, prec)?)))
                })(),
            );
            let r = (|| {
                let (a, b) = x.even_odd_split();
                let (a1, b1) = build_x(n + 1, prec)?.even_odd_split();
                let two_n = BigInt::from(1) << n;
                let bb = b.mul(&b)?.scale(&two_n);
                let aa = a.scale(&BigInt::from(2)).add(&a.mul(&a)?.scale(&two_n))?;
                let ab = b.add(&a.mul(&b)?.scale(&two_n))?;
                Ok([(show_ints(&bb), show_ints(&a1)), (show_ints(&aa), show_ints(&a1)), (show_ints(&ab), show_ints(&b1))])
            })();
            let labels = ["a_(n+1) = 2^n b_n^2", "a_(n+1) = 2a_n + 2^n a_n^2", "b_(n+1) = b_n + 2^n a_n b_n"];
            match r {
                Ok(pairs) => {
                    for (l, p) in labels.iter().zip(pairs) {
                        ctx.tally.eq(|| format!("{l}, n={n}, prec={prec}"), Ok(p));
                    }
                }
                Err(e) => ctx.tally.eq::<String>(|| format!("even/odd split, n={n}"), Err(e)),
            }
        }
    }
    Ok(())
}

fn random_virtual(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<GwElement> {
    let a = sample::form(field, rng.gen_range(0..=4), rng)?;
    let b = sample::form(field, rng.gen_range(0..=2), rng)?;
    a.sub(&b)
}

fn lambda(ctx: &mut Ctx) -> Result<()> {
    let prec = ctx.d_max();
    let fields = ctx.fields(0..=2);
    for field in &fields {
        let two = WittClass::one(field).scale(2);
        for a in field.enumerate()? {
            let inputs = || format!("field={field}, a={}", field.render_square_class(a));
            ctx.tally.eq(
                inputs,
                (|| {
                    let aa = WittClass::pfister(field, &[a, a])?;
                    let ma = WittClass::pfister(field, &[field.minus_one(), a])?;
                    Ok((aa, ma))
                })(),
            );
            ctx.tally.eq(inputs, (|| Ok((WittClass::pfister(field, &[a, a])?, WittClass::pfister(field, &[a])?.mul(&two)?)))());
        }
    }
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let (x, y) = (random_virtual(&field, &mut ctx.rng)?, random_virtual(&field, &mut ctx.rng)?);
        let inputs = || format!("field={field}, x={x}, y={y}, prec={prec}");
        match (x.lambda_series(prec), y.lambda_series(prec), x.add(&y).and_then(|s| s.lambda_series(prec))) {
            (Ok(lx), Ok(ly), Ok(lxy)) => {
                ctx.tally.eq(inputs, Ok((GwElement::one(&field), lx.coeffs()[0].clone())));
                if prec >= 1 {
                    ctx.tally.eq(inputs, Ok((x.clone(), lx.coeffs()[1].clone())));
                }
                match lx.mul(&ly) {
                    Ok(prod) => {
                        for d in 0..=prec {
                            ctx.tally.eq(|| format!("{} d={d}", inputs()), Ok((prod.coeffs()[d].clone(), lxy.coeffs()[d].clone())));
                        }
                    }
                    Err(e) => ctx.tally.eq::<GwElement>(inputs, Err(e)),
                }
            }
            (a, b, c) => {
                let e = a.err().or(b.err()).or(c.err()).expect("one side failed");
                ctx.tally.eq::<GwElement>(inputs, Err(e));
            }
        }
        // exterior powers of a diagonal form are subset sums of products
        let entries = sample::slots(&field, ctx.rng.gen_range(0..=5), &mut ctx.rng);
        let inputs = || format!("field={field}, diag({})", render(&field, &entries));
        let r = (|| {
            let q = GwElement::diag(&field, &entries)?;
            let ls = q.lambda_series(entries.len() + 1)?;
            let mut pairs = Vec::new();
            for d in 0..=entries.len() + 1 {
                let classes: Vec<GwElement> =
                    entries.iter().map(|&a| GwElement::class(&field, a)).collect::<Result<_>>()?;
                let expected =
                    subset_sum(&classes, d, GwElement::one(&field), GwElement::zero(&field), |a, b| a.mul(b), |a, b| a.add(b))?;
                pairs.push((expected, ls.coeffs()[d].clone()));
            }
            Ok(pairs)
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<GwElement>(inputs, Err(e)),
        }
        let a = sample::class(&field, &mut ctx.rng);
        let inputs = || format!("field={field}, λ of <<{}>>^, prec={prec}", field.render_square_class(a));
        let r = (|| {
            let p = GwElement::gpfister(&field, &[a])?;
            let ls = p.lambda_series(prec)?;
            Ok((1..=prec).map(|d| (p.clone(), ls.coeffs()[d].clone())).collect::<Vec<_>>())
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<GwElement>(inputs, Err(e)),
        }
        let q = sample::form(&field, ctx.rng.gen_range(0..=5), &mut ctx.rng)?.witt();
        let inputs = || format!("field={field}, q={q}");
        ctx.tally.eq(
            inputs,
            (|| Ok((q.scale(2), WittClass::pfister(&field, &[field.minus_one()])?.mul(&q)?)))(),
        );
        if q.is_in_ideal(1) {
            ctx.tally.holds(
                inputs,
                "hat lift has dimension 0 and Witt class q",
                q.hat_lift().map(|h| h.dim() == 0 && h.witt() == q),
            );
        }
    }
    Ok(())
}

fn pi(ctx: &mut Ctx) -> Result<()> {
    let dtop = ctx.d_max().max(2);
    let fields = ctx.fields(0..=3);
    for field in &fields {
        let classes = field.enumerate()?;
        for n in 1..=ctx.cfg.n_max as usize {
            let tuples: Vec<Vec<SquareClass>> = if field.depth() <= 2 {
                let mut all = vec![vec![]];
                for _ in 0..n {
                    all = all
                        .into_iter()
                        .flat_map(|t| classes.iter().map(move |&c| [t.clone(), vec![c]].concat()))
                        .collect();
                }
                all
            } else {
                (0..ctx.cfg.samples).map(|_| sample::slots(field, n, &mut ctx.rng)).collect()
            };
            for slots in tuples {
                let inputs = || format!("field={field}, n={n}, <<{}>>^, d=2..{dtop}", render(field, &slots));
                let r = (|| {
                    let p = GwElement::gpfister(field, &slots)?;
                    let ps = pi_series(n as u32, dtop, &p)?;
                    Ok(ps.into_iter().skip(2).find(|c| !c.is_zero_gw()).unwrap_or_else(|| GwElement::zero(field)))
                })();
                ctx.tally.eq(inputs, r.map(|c| (GwElement::zero(field), c)));
            }
        }
    }
    // π^d of a sum of Grothendieck-Pfister elements against the subset sum
    let dm = dtop.min(4);
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let n = ctx.n(2) as usize;
        let r = ctx.rng.gen_range(1..=4);
        let tuples: Vec<Vec<SquareClass>> = (0..r).map(|_| sample::slots(&field, n, &mut ctx.rng)).collect();
        let inputs = || {
            let ts: Vec<String> = tuples.iter().map(|t| format!("<<{}>>^", render(&field, t))).collect();
            format!("field={field}, n={n}, sum {}", ts.join(" + "))
        };
        let res = (|| {
            let phis: Vec<GwElement> = tuples.iter().map(|t| GwElement::gpfister(&field, t)).collect::<Result<_>>()?;
            let sum = phis.iter().try_fold(GwElement::zero(&field), |a, p| a.add(p))?;
            let ps = pi_series(n as u32, dm, &sum)?;
            (0..=dm)
                .map(|d| {
                    let e = subset_sum(&phis, d, GwElement::one(&field), GwElement::zero(&field), |a, b| a.mul(b), |a, b| a.add(b))?;
                    Ok((e, ps[d].clone()))
                })
                .collect::<Result<Vec<_>>>()
        })();
        match res {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<GwElement>(inputs, Err(e)),
        }
    }
    Ok(())
}

fn in_filtration(v: &AValue, m: u32) -> bool {
    match v {
        AValue::W(w) => w.is_in_ideal(m),
        AValue::H(h) => h.in_filtration(m),
    }
}

fn f_axioms(ctx: &mut Ctx) -> Result<()> {
    let dm = ctx.d_max();
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let q = sample::ideal_element(&field, n as usize, 3, &mut ctx.rng)?;
        let q2 = sample::ideal_element(&field, n as usize, 3, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, q={q}, q'={q2}");
        let r = (|| {
            let (a, b) = (f_values(n, dm, &q, mode)?, f_values(n, dm, &q2, mode)?);
            let s = f_values(n, dm, &q.add(&q2)?, mode)?;
            let mut pairs = Vec::new();
            for d in 0..=dm {
                let mut acc = AValue::zero(&field, mode);
                for k in 0..=d {
                    acc = acc.add(&a[k].mul(&b[d - k])?)?;
                }
                pairs.push((acc, s[d].clone()));
            }
            Ok((pairs, a))
        })();
        match r {
            Ok((pairs, a)) => {
                pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p)));
                for (d, v) in a.iter().enumerate() {
                    let m = n * d as u32;
                    ctx.tally.holds(|| format!("{} d={d}", inputs()), "f_n^d(q) lies in filtration nd", Ok(in_filtration(v, m)));
                }
            }
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }

        let (slots, phi) = pfister_with_slots(&field, n as usize, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, phi=<<{}>>", render(&field, &slots));
        let r = (|| {
            let fphi = AValue::symbol(&field, mode, &slots)?;
            let at = f_values(n, dm, &phi, mode)?;
            let neg = f_values(n, dm, &phi.neg(), mode)?;
            let mut pairs = vec![(AValue::one(&field, mode), at[0].clone())];
            if dm >= 1 {
                pairs.push((fphi.clone(), at[1].clone()));
            }
            for d in 2..=dm {
                pairs.push((AValue::zero(&field, mode), at[d].clone()));
            }
            for d in 1..=dm {
                let e = AValue::eps_pow(&field, mode, n * (d as u32 - 1)).mul(&fphi)?.scale(sign(d));
                pairs.push((e, neg[d].clone()));
            }
            Ok(pairs)
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }

        let r_len = ctx.rng.gen_range(1..=4);
        let tuples: Vec<Vec<SquareClass>> = (0..r_len).map(|_| sample::slots(&field, n as usize, &mut ctx.rng)).collect();
        let inputs = || format!("field={field}, mode={mode}, n={n}, sum of pfisters {tuples:?}");
        let r = (|| {
            let vals: Vec<AValue> = tuples.iter().map(|t| AValue::symbol(&field, mode, t)).collect::<Result<_>>()?;
            let sum = tuples.iter().try_fold(WittClass::zero(&field), |a, t| a.add(&WittClass::pfister(&field, t)?))?;
            let fs = f_values(n, dm, &sum, mode)?;
            (0..=dm).map(|d| Ok((av_subset_sum(&field, mode, &vals, d)?, fs[d].clone()))).collect::<Result<Vec<_>>>()
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }
    }
    Ok(())
}

fn g_bounds(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let (s, t) = (ctx.rng.gen_range(0..=2), ctx.rng.gen_range(0..=2));
        let q = sample::pfister_combination(&field, n as usize, s, t, &mut ctx.rng)?;
        let bound = 2 * s.max(t);
        let top = bound + 2;
        let inputs = || format!("field={field}, mode={mode}, n={n}, s={s}, t={t}, q={q}");
        let r = g_values(n, top, &q, mode).map(|g| g[bound + 1..].iter().find(|v| !v.is_zero()).cloned());
        ctx.tally.eq(inputs, r.map(|nz| (AValue::zero(&field, mode), nz.unwrap_or_else(|| AValue::zero(&field, mode)))));

        // f and g coincide when -1 is a square
        if field.base() == BaseField::QuadClosed {
            let dm = ctx.d_max();
            let r = (|| Ok((f_values(n, dm, &q, mode)?, g_values(n, dm, &q, mode)?)))();
            match r {
                Ok((f, g)) => f.into_iter().zip(g).for_each(|p| ctx.tally.eq(inputs, Ok(p))),
                Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
            }
        }

        // a form of dimension r has g_1^d = 0 beyond r
        let r_dim = 2 * ctx.rng.gen_range(1..=3);
        let form = sample::form(&field, r_dim, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, form={form}");
        let r = g_values(1, r_dim + 2, &form.witt(), mode).map(|g| g[r_dim + 1..].iter().find(|v| !v.is_zero()).cloned());
        ctx.tally.eq(inputs, r.map(|nz| (AValue::zero(&field, mode), nz.unwrap_or_else(|| AValue::zero(&field, mode)))));
    }

    // the bound is attained and f is unbounded, over a real closed tower
    let real = match &ctx.pinned {
        Some(f) if f.base() == BaseField::RealClosed && f.depth() >= 2 => f.clone(),
        Some(_) => return Ok(()),
        None => Field::tower(BaseField::RealClosed, 2)?.into_ref(),
    };
    for mode in ctx.modes() {
        for m in 1..=2usize {
            let inputs = || format!("field={real}, mode={mode}, n=1, s=t={m}, searching d={}", 2 * m);
            let mut found = Ok(false);
            for _ in 0..200 {
                let q = sample::pfister_combination(&real, 1, m, m, &mut ctx.rng)?;
                match eval_g_at(&q, 2 * m, mode) {
                    Ok(true) => {
                        found = Ok(true);
                        break;
                    }
                    Ok(false) => {}
                    Err(e) => {
                        found = Err(e);
                        break;
                    }
                }
            }
            ctx.tally.holds(inputs, "some q attains g^(2max(s,t)) != 0", found);
        }
        for n in 1..=ctx.cfg.n_max.min(3) {
            let phi = WittClass::pfister(&real, &vec![real.minus_one(); n as usize])?;
            let inputs = || format!("field={real}, mode={mode}, n={n}, q=-<<-1,...>>");
            let r = f_values(n, ctx.d_max().max(3), &phi.neg(), mode);
            ctx.tally.holds(inputs, "f^d(q) != 0 for all d >= 1", r.map(|f| f.iter().skip(1).all(|v| !v.is_zero())));
        }
    }
    Ok(())
}

fn eval_g_at(q: &WittClass, d: usize, mode: Mode) -> Result<bool> {
    Ok(!g_values(1, d, q, mode)?[d].is_zero())
}

fn classify(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    let dm = ctx.cfg.d_max;
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let alpha = random_invariant(n, mode, Basis::G, dm, 6, &mut ctx.rng);
        let inputs = || format!("field={field}, n={n}, alpha={alpha}");
        for d in 0..=alpha.max_degree() + 1 {
            ctx.tally.eq(|| format!("{} d={d}", inputs()), Ok((alpha.coeff(d), alpha.extract_coefficient(d))));
            let (p, m) = if d % 2 == 0 { (d / 2, d / 2) } else { (d / 2 + 1, d / 2) };
            let r = (|| Ok((alpha.coeff(d).evaluate(&field)?, alpha.phi_iter(p, m).evaluate(&WittClass::zero(&field))?)))();
            ctx.tally.eq(|| format!("{} pointwise d={d}", inputs()), r);
        }
        let (plus, minus) = (alpha.phi(true), alpha.phi(false));
        ctx.tally.eq(inputs, Ok((plus.phi(false), minus.phi(true))));
        let eps_n = UCoeff::eps_pow(mode, n);
        ctx.tally.eq(inputs, plus.sub(&minus).map(|l| (l, plus.phi(false).scale(&eps_n))));
        ctx.tally.eq(inputs, Ok((alpha.is_constant(), plus.is_zero())));
        ctx.tally.eq(inputs, Ok((alpha.is_constant(), minus.is_zero())));

        // pointwise contracts of the shifting operators
        let q = sample::ideal_element(&field, n as usize, 2, &mut ctx.rng)?;
        let (slots, phi) = pfister_with_slots(&field, n as usize, &mut ctx.rng)?;
        let inputs = || format!("field={field}, n={n}, alpha={alpha}, q={q}, phi=<<{}>>", render(&field, &slots));
        let r = (|| {
            let fphi = AValue::symbol(&field, mode, &slots)?;
            let base = alpha.evaluate(&q)?;
            let up = base.add(&fphi.mul(&plus.evaluate(&q)?)?)?;
            let down = base.sub(&fphi.mul(&minus.evaluate(&q)?)?)?;
            Ok([(up, alpha.evaluate(&q.add(&phi)?)?), (down, alpha.evaluate(&q.sub(&phi)?)?)])
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }
    }
    disc_example(ctx)
}

/// `Σ (-1)^d f_1^d` is the discriminant: stable in the truncation over
/// towers where the fundamental filtration terminates, and exact on positive
/// sums of 1-fold Pfister forms over real closed towers.
fn disc_example(ctx: &mut Ctx) -> Result<()> {
    if ctx.cfg.mode == Some(Mode::H) {
        return Ok(());
    }
    let mode = Mode::W;
    let fields = ctx.fields(1..=2);
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        if field.base() == BaseField::RealClosed {
            let s = ctx.rng.gen_range(0..=3);
            let slots = sample::slots(&field, s, &mut ctx.rng);
            let inputs = || format!("field={field}, q=sum of <<a>> for a in [{}]", render(&field, &slots));
            let r = (|| {
                let q = slots.iter().try_fold(WittClass::zero(&field), |a, &x| a.add(&WittClass::pfister(&field, &[x])?))?;
                let prod = slots.iter().fold(SquareClass::ONE, |a, &b| a * b);
                let fs = f_values(1, s + 2, &q, mode)?;
                let mut acc = AValue::zero(&field, mode);
                for (d, v) in fs.iter().enumerate().take(s + 1) {
                    acc = acc.add(&v.scale(sign(d)))?;
                }
                let tail_zero = fs[s + 1..].iter().all(|v| v.is_zero());
                let expected = AValue::W(WittClass::diag(&field, &[prod])?);
                Ok((expected.to_string(), if tail_zero { acc.to_string() } else { format!("{acc} with nonzero tail") }))
            })();
            ctx.tally.eq(inputs, r);
        } else {
            let dim = 2 * ctx.rng.gen_range(0..=3);
            let entries = sample::slots(&field, dim, &mut ctx.rng);
            let inputs = || format!("field={field}, q=diag({})", render(&field, &entries));
            let r = (|| {
                let q = WittClass::diag(&field, &entries)?;
                let det = entries.iter().fold(SquareClass::ONE, |a, &b| a * b);
                let disc = if (dim * dim.saturating_sub(1) / 2) % 2 == 1 { det * field.minus_one() } else { det };
                let expected = WittClass::diag(&field, &[disc])?;
                let top = 8;
                let fs = f_values(1, top, &q, mode)?;
                let partial = |upto: usize| -> Result<WittClass> {
                    let mut acc = WittClass::zero(&field);
                    for (d, v) in fs.iter().enumerate().take(upto + 1) {
                        if let AValue::W(w) = v {
                            acc = acc.add(&w.scale(sign(d)))?;
                        }
                    }
                    Ok(acc)
                };
                let (a, b) = (partial(top - 1)?, partial(top)?);
                Ok((format!("{expected} | {expected}"), format!("{a} | {b}")))
            })();
            ctx.tally.eq(inputs, r);
        }
    }
    Ok(())
}

fn product(ctx: &mut Ctx) -> Result<()> {
    for s in 0..=16u32 {
        for t in 0..=16u32 {
            for d in s.max(t)..=s + t {
                let inputs = || format!("C^{d}_({},{})", d - s, d - t);
                ctx.tally.eq(inputs, multinomial(d, d - s, d - t).map(|c| (d == s | t, c % 2 == 1)));
            }
        }
    }
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    let dm = ctx.cfg.d_max.min(4);
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let ba = if ctx.rng.gen_bool(0.5) { Basis::F } else { Basis::G };
        let bb = if ctx.rng.gen_bool(0.5) { Basis::F } else { Basis::G };
        let alpha = random_invariant(n, mode, ba, dm, 3, &mut ctx.rng);
        let beta = random_invariant(n, mode, bb, dm, 3, &mut ctx.rng);
        let q = sample::ideal_element(&field, n as usize, 2, &mut ctx.rng)?;
        let inputs = || format!("field={field}, alpha={alpha}, beta={beta}, q={q}");
        let r = (|| {
            let prod = alpha.product(&beta)?;
            Ok((alpha.evaluate(&q)?.mul(&beta.evaluate(&q)?)?, prod.evaluate(&q)?))
        })();
        ctx.tally.eq(inputs, r);
        for plus in [true, false] {
            let r = (|| {
                let eps = if plus { UCoeff::one(mode) } else { UCoeff::one(mode).neg() };
                let (pa, pb) = (alpha.phi(plus), beta.phi(plus));
                let lhs = alpha.product(&beta)?.phi(plus);
                let cross = pa.product(&pb)?.scale(&eps.mul(&UCoeff::eps_pow(mode, n)));
                let rhs = pa.product(&beta)?.add(&alpha.product(&pb)?)?.add(&cross)?;
                Ok((rhs.to_basis(Basis::F), lhs.to_basis(Basis::F)))
            })();
            ctx.tally.eq(|| format!("{} shift plus={plus}", inputs()), r);
        }
    }
    Ok(())
}

fn restrict(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    let dm = ctx.cfg.d_max;
    if ctx.modes().contains(&Mode::H) {
        for d in 0..=dm {
            let f1 = SymbolicInvariant::basis_element(1, Mode::H, Basis::F, 2 * d);
            let f2 = SymbolicInvariant::basis_element(2, Mode::H, Basis::F, d);
            ctx.tally.eq(|| format!("u_(2d)^(1) restricted, d={d}"), Ok((f2, f1.restrict())));
        }
    }
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(2);
        let q = sample::ideal_element(&field, n as usize + 1, 2, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, q={q}");
        let r = (|| {
            let fs = f_values(n, dm as usize, &q, mode)?;
            (0..=dm)
                .map(|d| {
                    let res = SymbolicInvariant::basis_element(n, mode, Basis::F, d).restrict();
                    Ok((fs[d as usize].clone(), res.evaluate(&q)?))
                })
                .collect::<Result<Vec<_>>>()
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }
        let alpha = random_invariant(n, mode, Basis::G, dm, 3, &mut ctx.rng);
        ctx.tally.eq(
            || format!("{} alpha={alpha}", inputs()),
            (|| Ok((alpha.evaluate(&q)?, alpha.restrict().evaluate(&q)?)))(),
        );
    }
    Ok(())
}

fn simil(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.fields(1..=2);
    let modes = ctx.modes();
    let dm = ctx.cfg.d_max;
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let lambda = sample::class(&field, &mut ctx.rng);
        let q = sample::ideal_element(&field, n as usize, 2, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, lambda={}, q={q}", field.render_square_class(lambda));
        let r = (|| {
            let scaled = q.scale_by_class(lambda)?;
            let gs = g_values(n, dm as usize, &scaled, mode)?;
            (0..=dm)
                .map(|d| {
                    let g = SymbolicInvariant::basis_element(n, mode, Basis::G, d);
                    Ok((gs[d as usize].clone(), g.evaluate_scaled(lambda, &q)?))
                })
                .collect::<Result<Vec<_>>>()
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }

        let (slots, phi) = pfister_with_slots(&field, n as usize, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, lambda={}, phi=<<{}>>", field.render_square_class(lambda), render(&field, &slots));
        let r = (|| {
            let fs = f_values(n, dm as usize, &phi.scale_by_class(lambda)?, mode)?;
            let base = AValue::symbol(&field, mode, &[lambda])?.mul(&AValue::symbol(&field, mode, &slots)?)?;
            (2..=dm)
                .map(|d| {
                    let e = AValue::eps_pow(&field, mode, n * (d - 1) - 1).mul(&base)?.scale(sign(d as usize));
                    Ok((e, fs[d as usize].clone()))
                })
                .collect::<Result<Vec<_>>>()
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }

        let alpha = random_invariant(n, mode, Basis::G, dm, 4, &mut ctx.rng);
        let inputs = || format!("mode={mode}, n={n}, alpha={alpha}");
        let psi = alpha.psi_tilde();
        let delta = UCoeff::int(mode, -mode.delta());
        ctx.tally.eq(inputs, Ok((psi.scale(&delta), psi.psi_tilde())));
        ctx.tally.eq(inputs, Ok((psi.clone(), alpha.psi_tilde_closed_form().to_basis(Basis::G))));

        // similarity classes: ψ̃α = 0 iff ε^{n-1} a_{2i+2} = δ a_{2i+1}
        let mut seq = random_invariant(n, mode, Basis::G, dm, 4, &mut ctx.rng);
        if ctx.rng.gen_bool(0.5) {
            let mut terms = vec![(0, random_ucoeff(mode, &mut ctx.rng))];
            for i in 0..=dm / 2 {
                let a = match mode {
                    Mode::W => random_ucoeff(mode, &mut ctx.rng),
                    Mode::H => UCoeff::zero(mode),
                };
                let odd = a.mul(&UCoeff::eps_pow(mode, n - 1));
                terms.push((2 * i + 2, a));
                terms.push((2 * i + 1, odd));
            }
            seq = SymbolicInvariant::from_coeffs(n, mode, Basis::G, terms);
        }
        let criterion = (0..=seq.max_degree() / 2 + 1).all(|i| {
            seq.coeff(2 * i + 2).mul(&UCoeff::eps_pow(mode, n - 1)) == seq.coeff(2 * i + 1).scale(mode.delta())
        });
        ctx.tally.eq(|| format!("mode={mode}, n={n}, sequence={seq}"), Ok((criterion, seq.psi_tilde().is_zero())));
    }
    Ok(())
}

fn ram(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.ramified_fields(1..=2)?;
    let modes = ctx.modes();
    let dm = ctx.d_max();
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let n = ctx.n(3);
        let q = sample::unramified_ideal_element(&field, n as usize, 3, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, q={q}");
        let r = (|| {
            let mut vals = f_values(n, dm, &q, mode)?;
            vals.extend(g_values(n, dm, &q, mode)?);
            vals.iter().map(|v| v.residue()).collect::<Result<Vec<_>>>()
        })();
        match r {
            Ok(res) => {
                for v in res {
                    ctx.tally.eq(inputs, Ok((AValue::zero(v.field(), mode), v)));
                }
            }
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }

        // ∂ e_d(q) = e_{d-1}(∂_π q), with e_d computed from a Pfister
        // decomposition as a sum of symbols
        let d = ctx.rng.gen_range(1..=3usize);
        let terms: Vec<(bool, SquareClass, Vec<SquareClass>)> = (0..ctx.rng.gen_range(0..=3))
            .map(|_| (ctx.rng.gen_bool(0.5), sample::class(&field, &mut ctx.rng), sample::slots(&field, d, &mut ctx.rng)))
            .collect();
        let inputs = || format!("field={field}, d={d}, terms={terms:?}");
        let r = (|| {
            let mut q = WittClass::zero(&field);
            let mut e = CohClass::zero(&field);
            for (neg, x, slots) in &terms {
                let p = WittClass::pfister(&field, slots)?.scale_by_class(*x)?;
                q = if *neg { q.sub(&p)? } else { q.add(&p)? };
                e = e.add(&CohClass::symbol(&field, slots)?)?;
            }
            Ok((e.residue()?, q.second_residue()?.e_n(d as u32 - 1)?))
        })();
        ctx.tally.eq(inputs, r);
    }
    Ok(())
}

fn fixed_dim(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.fields(0..=2);
    let modes = ctx.modes();
    let dm = ctx.d_max();
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        let m = [2, 4, 6][i % 3];
        let q = sample::form(&field, m, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, q={q}");
        let r = (|| {
            let w = q.witt();
            let (fs, gs) = (f_values(1, dm, &w, mode)?, g_values(1, dm, &w, mode)?);
            let mut pairs = Vec::new();
            for d in 0..=dm {
                pairs.push((fs[d].clone(), eval_fixed_dim(d, &q, mode, Basis::F)?));
                pairs.push((gs[d].clone(), eval_fixed_dim(d, &q, mode, Basis::G)?));
            }
            Ok(pairs)
        })();
        match r {
            Ok(pairs) => pairs.into_iter().for_each(|p| ctx.tally.eq(inputs, Ok(p))),
            Err(e) => ctx.tally.eq::<AValue>(inputs, Err(e)),
        }
    }
    Ok(())
}

fn coh_ops(ctx: &mut Ctx) -> Result<()> {
    for field in ctx.fields(0..=2) {
        let classes = field.enumerate()?;
        for &a in &classes {
            for &b in &classes {
                let inputs = || format!("field={field}, a={}, b={}", field.render_square_class(a), field.render_square_class(b));
                let r = (|| {
                    let ab = CohClass::degree_one(&field, a * b)?;
                    Ok((CohClass::degree_one(&field, a)?.add(&CohClass::degree_one(&field, b)?)?, ab))
                })();
                ctx.tally.eq(inputs, r);
            }
        }
        if field.base() == BaseField::QuadClosed {
            ctx.tally.holds(|| format!("field={field}"), "(-1) = 0", Ok(CohClass::minus_one(&field).is_zero()));
        }
    }
    let fields = ctx.fields(0..=3);
    let fields_pos = ctx.ramified_fields(1..=2).unwrap_or_else(|_| fields.clone());
    let dm = ctx.cfg.d_max;
    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let n = ctx.n(3) as usize;
        let (slots, phi) = pfister_with_slots(&field, n, &mut ctx.rng)?;
        let inputs = || format!("field={field}, e_n(<<{}>>)", render(&field, &slots));
        ctx.tally.eq(inputs, (|| Ok((CohClass::symbol(&field, &slots)?, phi.e_n(n as u32)?)))());

        // adding an (n+1)-fold Pfister form shifts by (-1)^{n-1} e_{n+1}(φ) α^{++}
        let field = fields_pos[i % fields_pos.len()].clone();
        let mode = Mode::H;
        let n = ctx.n(2);
        let q = sample::ideal_element(&field, n as usize, 2, &mut ctx.rng)?;
        let (slots, phi) = pfister_with_slots(&field, n as usize + 1, &mut ctx.rng)?;
        let alpha = random_invariant(n, mode, Basis::F, dm, 3, &mut ctx.rng);
        let inputs = || format!("field={field}, n={n}, alpha={alpha}, q={q}, phi=<<{}>>", render(&field, &slots));
        let r = (|| {
            let e = AValue::eps_pow(&field, mode, n - 1).mul(&AValue::symbol(&field, mode, &slots)?)?;
            let rhs = alpha.evaluate(&q)?.add(&e.mul(&alpha.phi_iter(2, 0).evaluate(&q)?)?)?;
            Ok((rhs, alpha.evaluate(&q.add(&phi)?)?))
        })();
        ctx.tally.eq(inputs, r);
        for d in 0..=dm {
            let alpha = SymbolicInvariant::basis_element(n, mode, Basis::F, d);
            let r = (|| {
                let e = AValue::eps_pow(&field, mode, n - 1).mul(&AValue::symbol(&field, mode, &slots)?)?;
                let rhs = alpha.evaluate(&q)?.add(&e.mul(&alpha.phi_iter(2, 0).evaluate(&q)?)?)?;
                Ok((rhs, alpha.evaluate(&q.add(&phi)?)?))
            })();
            ctx.tally.eq(|| format!("field={field}, n={n}, u_(nd) d={d}, q={q}, phi=<<{}>>", render(&field, &slots)), r);
        }
    }
    Ok(())
}

fn delta1(ctx: &mut Ctx) -> Result<()> {
    let fields = ctx.ramified_fields(1..=2)?;
    let modes = ctx.modes();
    let dm = ctx.cfg.d_max.min(4);
    let nm = ctx.cfg.n_max.min(3);

    // equivalent factorizations of the same class give the same descent value
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < ctx.cfg.samples && attempts < 20 * ctx.cfg.samples {
        let field = fields[attempts % fields.len()].clone();
        let mode = modes[attempts % modes.len()];
        attempts += 1;
        let n = ctx.rng.gen_range(1..=nm);
        let a = sample::class(&field, &mut ctx.rng);
        let mut alts = Vec::new();
        if ctx.rng.gen_bool(0.5) {
            let q0 = sample::ideal_element(&field, n as usize, 2, &mut ctx.rng)?;
            let x = FactorizedForm::new(vec![a], q0, n + 1)?;
            alts = alt_factorizations(&x, 4, &mut ctx.rng)?;
        } else {
            let b = sample::class(&field, &mut ctx.rng);
            let q0 = hoffmann_cofactor(&field, a, b, n, ctx.rng.gen_range(1..=3), &mut ctx.rng)?;
            alts.push(FactorizedForm::new(vec![a], q0.clone(), n + 1)?);
            alts.push(FactorizedForm::new(vec![b], q0, n + 1)?);
        }
        let x = alts[0].clone();
        for y in &alts[1..] {
            pairs += 1;
            for d in 1..=dm {
                let alpha = SymbolicInvariant::basis_element(n, mode, Basis::F, d);
                let inputs = || {
                    format!(
                        "field={field}, mode={mode}, d={d}, <<{}>>·{} vs <<{}>>·{}",
                        render(&field, x.factor()),
                        x.cofactor(),
                        render(&field, y.factor()),
                        y.cofactor()
                    )
                };
                ctx.tally.eq(inputs, (|| Ok((delta_t_eval(&x, &alpha, 1)?, delta_t_eval(y, &alpha, 1)?)))());
            }
        }
    }
    ctx.tally.holds(
        || format!("{} pairs requested", ctx.cfg.samples),
        "enough alternative factorizations were generated",
        Ok(pairs >= ctx.cfg.samples),
    );

    for i in 0..ctx.cfg.samples {
        let field = fields[i % fields.len()].clone();
        let mode = modes[i % modes.len()];
        if nm < 2 {
            break;
        }
        let n = ctx.rng.gen_range(2..=nm);
        let t = ctx.rng.gen_range(1..n);
        let slots = sample::slots(&field, t as usize, &mut ctx.rng);
        let head = AValue::symbol(&field, mode, &slots)?;
        let phi = WittClass::pfister(&field, &slots)?;

        // f_n^d(φq') = ε^{t(d-1)} f_t(φ) f_{n-t}^d(q') for d >= 1
        let q1 = sample::ideal_element(&field, (n - t) as usize, 2, &mut ctx.rng)?;
        let inputs = || format!("field={field}, mode={mode}, n={n}, phi=<<{}>>, q'={q1}", render(&field, &slots));
        for d in 1..=dm {
            let r = (|| Ok((divisibility_prediction(&slots, &q1, n, d, mode)?, eval_f(n, d as usize, &phi.mul(&q1)?, mode)?)))();
            ctx.tally.eq(|| format!("{} d={d}", inputs()), r);
        }

        // restriction commutes with Ω^t
        let alpha = random_normalized(n, mode, dm, &mut ctx.rng);
        let q2 = sample::ideal_element(&field, (n + 1 - t) as usize, 2, &mut ctx.rng)?;
        let inputs = || format!("field={field}, n={n}, t={t}, alpha={alpha}, phi=<<{}>>, q'={q2}", render(&field, &slots));
        let r = (|| Ok((alpha.omega(t)?.restrict(), alpha.restrict().omega(t)?)))();
        ctx.tally.eq(inputs, r);
        let r = (|| {
            let direct = alpha.restrict().evaluate(&phi.mul(&q2)?)?;
            let via = head.mul(&alpha.omega(t)?.restrict().evaluate(&q2)?)?;
            Ok((direct, via))
        })();
        ctx.tally.eq(inputs, r);

        // Ψ commutes with descent
        let lambda = sample::class(&field, &mut ctx.rng);
        let inputs = || format!("{} lambda={}", inputs(), field.render_square_class(lambda));
        let r = (|| {
            let direct = alpha.evaluate_scaled(lambda, &phi.mul(&q1)?)?;
            let via = head.mul(&alpha.omega(t)?.evaluate_scaled(lambda, &q1)?)?;
            Ok((direct, via))
        })();
        ctx.tally.eq(inputs, r);

        // <<a>> λ^k(q) = <<b>> λ^k(q) for q built from values of <<ab>>
        let (a, b) = (sample::class(&field, &mut ctx.rng), sample::class(&field, &mut ctx.rng));
        let cs = crate::factorized::certified_values(&field, a, b)?;
        let terms: Vec<(SquareClass, SquareClass)> =
            (0..ctx.rng.gen_range(1..=3)).map(|_| (sample::class(&field, &mut ctx.rng), ctx.pick(&cs))).collect();
        let k = ctx.rng.gen_range(1..=4);
        ctx.tally.holds(
            || format!("field={field}, a={}, b={}, terms={terms:?}, k={k}", field.render_square_class(a), field.render_square_class(b)),
            "<<a>> λ^k(q) = <<b>> λ^k(q)",
            lemma_factor_check(&field, a, b, &terms, k),
        );
    }
    Ok(())
}
