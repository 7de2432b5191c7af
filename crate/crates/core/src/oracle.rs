//! Independent verifiers for local solubility.
//!
//! * The direct check evaluates quartic symbols of `d`, `bd` and `bd²` at
//!   each odd prime of `b`, without the graph or any linear algebra.
//! * The graph check evaluates the degree conditions on the partition that
//!   `d` induces on the vertices.
//! * The point search looks for local points on `dw² = d² − 4bz⁴` and
//!   certifies them with the multivariable Hensel criterion, bypassing the
//!   symbol conditions altogether.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, PrimaryFactorization, I, ONE, T};
use crate::graph::SelmerGraph;
use crate::quartic::symbol_exp;
use crate::residue_units::{canonical_mod_t, enumerate_odd_units};
use crate::selmer::{lsc_at_t_residues, DivisorClass, ExponentConvention, LscVerdict};

/// A place of the Gaussian rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LocalPlace {
    Odd(GaussianInt),
    T,
    Infinite,
}

impl std::fmt::Display for LocalPlace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LocalPlace::Odd(p) => write!(f, "{p}"),
            LocalPlace::T => write!(f, "1+i"),
            LocalPlace::Infinite => write!(f, "inf"),
        }
    }
}

impl LocalPlace {
    /// Valuation of a nonzero value at a finite place.
    pub fn valuation(self, g: GaussianInt) -> Option<u32> {
        if g.is_zero() {
            return None;
        }
        match self {
            LocalPlace::T => Some(g.split_t().0),
            LocalPlace::Odd(p) => {
                let mut k = 0;
                let mut h = g;
                while let Some(q) = h.div_exact(p) {
                    h = q;
                    k += 1;
                }
                Some(k)
            }
            LocalPlace::Infinite => None,
        }
    }

    fn uniformizer(self) -> GaussianInt {
        match self {
            LocalPlace::Odd(p) => p,
            _ => T,
        }
    }
}

/// The places dividing `2b`, plus the infinite place.
pub fn places_of(b: &PrimaryFactorization) -> Vec<LocalPlace> {
    let mut out: Vec<LocalPlace> = b.primes().map(LocalPlace::Odd).collect();
    out.push(LocalPlace::T);
    out.push(LocalPlace::Infinite);
    out
}

fn check_divisor(b: &PrimaryFactorization, d: &DivisorClass) -> Result<()> {
    if d.s > 1 || d.t > 1 {
        return Err(Error::InvalidDivisor("unit and 1+i exponents must be 0 or 1".into()));
    }
    if d.odd.windows(2).any(|w| w[0] >= w[1]) || d.odd.iter().any(|&v| v >= b.odd_part.len()) {
        return Err(Error::InvalidDivisor(format!("bad vertex list {:?}", d.odd)));
    }
    Ok(())
}

/// `i^a (1+i)^c ∏_{w ≠ v} w^{e_w}` reduced modulo the prime `v`.
fn residue_mod(b: &PrimaryFactorization, v: usize, a: u32, c: u32, exps: &[u32]) -> GaussianInt {
    let p = b.odd_part[v].0;
    let mut acc = ONE.mul_i_pow(a).rem(p);
    let tr = T.rem(p);
    for _ in 0..c {
        acc = (acc * tr).rem(p);
    }
    for (w, &(q, _)) in b.odd_part.iter().enumerate() {
        if w == v {
            continue;
        }
        let qr = q.rem(p);
        for _ in 0..exps[w] {
            acc = (acc * qr).rem(p);
        }
    }
    acc
}

fn log_at(b: &PrimaryFactorization, v: usize, a: u32, c: u32, exps: &[u32]) -> u8 {
    let p = b.odd_part[v].0;
    symbol_exp(residue_mod(b, v, a, c, exps), p).expect("residue is a unit").log
}

/// The symbol-based local solubility verdict at the odd prime `b.odd_part[v]`.
pub fn lsc_at_place_direct(b: &PrimaryFactorization, d: &DivisorClass, v: usize) -> Result<bool> {
    check_divisor(b, d)?;
    let (p, r) = *b.odd_part.get(v).ok_or(Error::UnknownVertex(v))?;
    let k = b.odd_part.len();
    let in_d: Vec<u32> = (0..k).map(|w| d.contains(w) as u32).collect();
    let e_b: Vec<u32> = b.odd_part.iter().map(|&(_, e)| e).collect();
    let (s_b, t_b, s_d, t_d) = (b.s as u32, b.t, d.s as u32, d.t as u32);
    let sym_d = || log_at(b, v, s_d, t_d, &in_d);
    let sym_bd = || {
        let exps: Vec<u32> = (0..k).map(|w| e_b[w] + in_d[w]).collect();
        log_at(b, v, s_b + s_d, t_b + t_d, &exps)
    };
    let divides = in_d[v] == 1;
    Ok(match (r % 2 == 1, divides) {
        (true, false) => sym_d() % 2 == 0,
        (false, false) => sym_bd() % 2 == 0 || sym_d() % 2 == 0,
        (true, true) => sym_bd() % 2 == 0,
        (false, true) => {
            let exps: Vec<u32> = (0..k).map(|w| e_b[w] + 2 * in_d[w]).collect();
            let sym = log_at(b, v, s_b + 2 * s_d, t_b + 2 * t_d, &exps);
            let n_q = symbol_exp(I, p)?.log;
            sym == (2 * n_q) % 4
        }
    })
}

/// Symbol-based solubility at every odd prime of `b`.
pub fn lsc_away_direct(b: &PrimaryFactorization, d: &DivisorClass) -> Result<bool> {
    check_divisor(b, d)?;
    for v in 0..b.odd_part.len() {
        if !lsc_at_place_direct(b, d, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree conditions on the partition of the vertices induced by `d`.
pub fn lsc_away_graph(graph: &SelmerGraph, d: &DivisorClass) -> Result<bool> {
    d.validate(graph)?;
    let (s_b, t_b) = (graph.s_b as u32, graph.t_b);
    let (s_d, t_d) = (d.s as u32, d.t as u32);
    for v in 0..graph.len() {
        let vx = &graph.vertices[v];
        let (m, n) = (vx.m4(), vx.n4());
        let deg_d = graph.degree_where(v, |w| d.contains(w))?;
        let deg_bd = graph.degree_where(v, |w| !d.contains(w))?;
        let ok = match (vx.is_q(), d.contains(v)) {
            (false, false) => (deg_d + m * t_d + n * s_d) % 2 == 0,
            (false, true) => {
                let deg2 = graph.degree(v, &[2])?;
                (deg_bd + deg2 + m * (t_b + t_d) + n * (s_b + s_d)) % 2 == 0
            }
            (true, false) => {
                let deg13 = graph.degree(v, &[1, 3])?;
                (deg_d + m * t_d + n * s_d) % 2 == 0
                    || (deg_d + deg13 + m * (t_b + t_d) + n * (s_b + s_d)) % 2 == 0
            }
            (true, true) => {
                let deg13 = graph.degree(v, &[1, 3])?;
                let deg1 = graph.degree(v, &[1])?;
                let bracket = (deg13 + m * t_b + n * s_b) % 4;
                bracket % 2 == 0
                    && (deg_bd + deg1 + m * t_d + n * (s_d + 1) + bracket / 2) % 2 == 0
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d₀ = d/(1+i)^{t_d}` reduced modulo `(1+i)^7`.
fn d0_mod_t7(b: &PrimaryFactorization, d: &DivisorClass) -> GaussianInt {
    d.odd.iter().fold(ONE.mul_i_pow(d.s as u32), |acc, &v| {
        canonical_mod_t(acc * b.odd_part[v].0, 7)
    })
}

fn b0_mod_t7(b: &PrimaryFactorization) -> GaussianInt {
    let mut acc = ONE.mul_i_pow(b.s as u32);
    for &(p, e) in &b.odd_part {
        for _ in 0..e {
            acc = canonical_mod_t(acc * p, 7);
        }
    }
    acc
}

/// The residue conditions at `1+i`, evaluated from the factorization alone.
pub fn lsc_at_t_direct(
    b: &PrimaryFactorization,
    d: &DivisorClass,
    convention: ExponentConvention,
) -> Result<LscVerdict> {
    check_divisor(b, d)?;
    Ok(lsc_at_t_residues(b0_mod_t7(b), b.t, d0_mod_t7(b, d), d.t as u32, convention))
}

/// Every square-free divisor class of `2b`, in canonical order.
pub fn all_divisor_classes(k: usize) -> Vec<DivisorClass> {
    let mut out = Vec::with_capacity(4 << k);
    for s in 0..2u8 {
        for t in 0..2u8 {
            for mask in 0u64..(1 << k) {
                let odd = (0..k).filter(|&v| mask >> v & 1 == 1).collect();
                out.push(DivisorClass { s, t, odd });
            }
        }
    }
    out
}

/// The Selmer group by testing every divisor class with the direct checks.
pub fn selmer_group_bruteforce(b: &PrimaryFactorization) -> Result<BTreeSet<DivisorClass>> {
    if !b.is_fourth_power_free() {
        return Err(Error::NotFourthPowerFree);
    }
    let mut out = BTreeSet::new();
    for d in all_divisor_classes(b.odd_part.len()) {
        if lsc_away_direct(b, &d)? && lsc_at_t_direct(b, &d, ExponentConvention::Minus)?.holds() {
            out.insert(d);
        }
    }
    Ok(out)
}

/// A disagreement between the fast algorithm and the oracles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub b: GaussianInt,
    pub d: Option<String>,
    pub what: String,
}

/// Totals from [`check_oracle_chain`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct ChainReport {
    pub curves: usize,
    pub divisors: usize,
    pub mismatches: Vec<Mismatch>,
}

/// For each curve, compares the graph and direct checks on every divisor
/// class and the fast group with [`selmer_group_bruteforce`].
pub fn check_oracle_chain(curves: &[PrimaryFactorization]) -> Result<ChainReport> {
    use rayon::prelude::*;
    let per_curve = curves
        .par_iter()
        .map(|b| -> Result<(usize, Vec<Mismatch>)> {
            let group = crate::selmer::compute_selmer_group(b)?;
            let brute = selmer_group_bruteforce(b)?;
            let value = b.recompose();
            let mut out = Vec::new();
            let classes = all_divisor_classes(b.odd_part.len());
            for d in &classes {
                let direct = lsc_away_direct(b, d)?;
                let graph = lsc_away_graph(&group.graph, d)?;
                if direct != graph {
                    out.push(Mismatch {
                        b: value,
                        d: Some(d.describe(&group.graph)),
                        what: format!("graph check {graph}, direct check {direct}"),
                    });
                }
            }
            if group.elements != brute {
                out.push(Mismatch {
                    b: value,
                    d: None,
                    what: format!("fast group has {} elements, brute force {}", group.size(), brute.len()),
                });
            }
            Ok((classes.len(), out))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ChainReport { curves: curves.len(), ..Default::default() };
    for (n, m) in per_curve {
        report.divisors += n;
        report.mismatches.extend(m);
    }
    Ok(report)
}

/// A bivariate polynomial `Σ c · X^i Y^j` with Gaussian coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalPoly {
    pub terms: Vec<(GaussianInt, u32, u32)>,
}

impl LocalPoly {
    pub fn new(terms: Vec<(GaussianInt, u32, u32)>) -> Self {
        LocalPoly { terms }
    }

    pub fn eval(&self, x: GaussianInt, y: GaussianInt) -> GaussianInt {
        self.terms
            .iter()
            .fold(GaussianInt::default(), |acc, &(c, i, j)| acc + c * x.pow(i) * y.pow(j))
    }

    pub fn d_dx(&self) -> LocalPoly {
        LocalPoly::new(
            self.terms
                .iter()
                .filter(|t| t.1 > 0)
                .map(|&(c, i, j)| (c * GaussianInt::from_int(i as i128), i - 1, j))
                .collect(),
        )
    }

    pub fn d_dy(&self) -> LocalPoly {
        LocalPoly::new(
            self.terms
                .iter()
                .filter(|t| t.2 > 0)
                .map(|&(c, i, j)| (c * GaussianInt::from_int(j as i128), i, j - 1))
                .collect(),
        )
    }
}

/// Multivariable Hensel: `v(f(a)) > 2 · min v(∂f/∂X_i (a))` guarantees a
/// root of `f` congruent to `a`. An exact root is accepted outright.
pub fn hensel_criterion(f: &LocalPoly, point: (GaussianInt, GaussianInt), place: LocalPlace) -> bool {
    if place == LocalPlace::Infinite {
        return false;
    }
    let (x, y) = point;
    let value = f.eval(x, y);
    if value.is_zero() {
        return true;
    }
    let vf = place.valuation(value).unwrap();
    let grads = [f.d_dx().eval(x, y), f.d_dy().eval(x, y)];
    let Some(vg) = grads.iter().filter_map(|&g| place.valuation(g)).min() else {
        return false;
    };
    vf > 2 * vg
}

/// The residue field of an odd Gaussian prime, as `ℤ/ℓ` for split primes
/// or `𝔽_ℓ[i]` for inert ones. Elements are pairs `(a, b)` meaning `a + b·i`
/// in the inert case and `(a, 0)` in the split case.
#[derive(Clone, Copy, Debug)]
struct ResidueField {
    ell: u64,
    /// Image of `i` for split primes.
    i_image: Option<u64>,
}

type Fe = (u64, u64);

impl ResidueField {
    fn new(p: GaussianInt) -> Self {
        if p.im == 0 {
            ResidueField { ell: p.re.unsigned_abs() as u64, i_image: None }
        } else {
            let ell = p.norm() as u64;
            // p = x + yi ≡ 0 gives i ≡ −x·y⁻¹
            let x = p.re.rem_euclid(ell as i128) as u64;
            let y = p.im.rem_euclid(ell as i128) as u64;
            let f = ResidueField { ell, i_image: None };
            let yinv = f.pow_int(y, ell - 2);
            let r = (ell - x) % ell * yinv % ell;
            ResidueField { ell, i_image: Some(r) }
        }
    }

    fn pow_int(&self, mut b: u64, mut e: u64) -> u64 {
        let m = self.ell as u128;
        let mut acc = 1u128;
        let mut base = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        b = acc as u64;
        b
    }

    fn from(&self, g: GaussianInt) -> Fe {
        let l = self.ell as i128;
        match self.i_image {
            Some(r) => (((g.re + g.im.rem_euclid(l) * r as i128).rem_euclid(l)) as u64, 0),
            None => (g.re.rem_euclid(l) as u64, g.im.rem_euclid(l) as u64),
        }
    }

    fn to_gaussian(&self, e: Fe) -> GaussianInt {
        GaussianInt::new(e.0 as i128, e.1 as i128)
    }

    fn mul(&self, a: Fe, b: Fe) -> Fe {
        let l = self.ell as u128;
        let (a0, a1, b0, b1) = (a.0 as u128, a.1 as u128, b.0 as u128, b.1 as u128);
        let re = (a0 * b0 % l + l - a1 * b1 % l) % l;
        let im = (a0 * b1 + a1 * b0) % l;
        (re as u64, im as u64)
    }

    fn add(&self, a: Fe, b: Fe) -> Fe {
        ((a.0 + b.0) % self.ell, (a.1 + b.1) % self.ell)
    }

    fn neg(&self, a: Fe) -> Fe {
        ((self.ell - a.0) % self.ell, (self.ell - a.1) % self.ell)
    }

    fn size(&self) -> u64 {
        if self.i_image.is_some() {
            self.ell
        } else {
            self.ell * self.ell
        }
    }

    fn inv(&self, a: Fe) -> Fe {
        let mut acc = (1, 0);
        let mut base = a;
        let mut e = self.size() - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn units(&self) -> impl Iterator<Item = Fe> + '_ {
        let l = self.ell;
        let inert = self.i_image.is_none();
        (0..self.size()).map(move |k| if inert { (k / l, k % l) } else { (k, 0) }).filter(|&e| e != (0, 0))
    }

    /// Map from each nonzero `n`-th power to one of its roots.
    fn power_roots(&self, n: u32) -> HashMap<Fe, Fe> {
        let mut out = HashMap::new();
        for u in self.units() {
            let mut x = (1, 0);
            for _ in 0..n {
                x = self.mul(x, u);
            }
            out.entry(x).or_insert(u);
        }
        out
    }
}

/// Unit part modulo a power of the uniformizer that is enough for the
/// Hensel tests below: `π²` at odd places and `(1+i)^10` at `1+i`.
fn reduce_unit(u: GaussianInt, place: LocalPlace) -> GaussianInt {
    match place {
        LocalPlace::Odd(p) => u.rem(p * p),
        _ => canonical_mod_t(u, 10),
    }
}

/// Whether `π^v · unit` is an `n`-th power in the completion, by a residue
/// search certified with [`hensel_criterion`].
fn is_local_power(v: u32, unit: GaussianInt, n: u32, place: LocalPlace) -> bool {
    if !v.is_multiple_of(n) {
        return false;
    }
    let unit = reduce_unit(unit, place);
    let f = LocalPoly::new(vec![(ONE, n, 0), (-unit, 0, 0)]);
    match place {
        LocalPlace::Odd(p) => {
            let field = ResidueField::new(p);
            match field.power_roots(n).get(&field.from(unit)) {
                Some(&root) => hensel_criterion(&f, (field.to_gaussian(root), ONE), place),
                None => false,
            }
        }
        LocalPlace::T => enumerate_odd_units(9)
            .unwrap()
            .into_iter()
            .any(|x| hensel_criterion(&f, (x.value(), ONE), place)),
        LocalPlace::Infinite => true,
    }
}

/// Smallest and largest valuations tried for `z` and `w`.
pub const VALUATION_RANGE: (i32, i32) = (-4, 6);

/// Whether the curve `dw² = d² − 4bz⁴` has a point over the completion at
/// `place`, found by a scaled residue search certified with
/// [`hensel_criterion`]. `d` is an arbitrary nonzero divisor of `2b`.
///
/// Points with `z = 0`, `w = 0` and the two points at infinity are tested
/// as local square/fourth-power conditions. A `false` means no point was
/// found within [`VALUATION_RANGE`].
pub fn cd_point_search(b: GaussianInt, d: GaussianInt, place: LocalPlace) -> Result<bool> {
    if b.is_zero() || d.is_zero() {
        return Err(Error::Zero);
    }
    match place {
        LocalPlace::Infinite => return Ok(true),
        LocalPlace::Odd(p) => {
            if !crate::gaussian::is_primary_prime(p) || !p.divides(b) {
                return Err(Error::InvalidPlace(format!("{p} does not divide {b}")));
            }
        }
        LocalPlace::T => {}
    }
    // points at infinity: b/d a square; z = 0: d a square; w = 0: d²/(4b) a
    // fourth power. Both quotients are replaced by products that differ by
    // a square or a fourth power.
    let (vb, ub) = split_at(b, place);
    let (vd, ud) = split_at(d, place);
    let (vb, ub, vd, ud) = (vb, reduce_unit(ub, place), vd, reduce_unit(ud, place));
    let (v4, u4) = match place {
        LocalPlace::T => (4, -ONE),
        _ => (0, GaussianInt::from_int(4)),
    };
    let (v4b, u4b) = (v4 + vb, reduce_unit(u4 * ub, place));
    let at_infinity = is_local_power(vb + vd, ub * ud, 2, place);
    let zero_z = is_local_power(vd, ud, 2, place);
    let zero_w_unit = reduce_unit(ud * ud, place) * reduce_unit(u4b * u4b * u4b, place);
    let zero_w = is_local_power(2 * vd + 3 * v4b, zero_w_unit, 4, place);
    if at_infinity || zero_z || zero_w {
        return Ok(true);
    }
    Ok(match place {
        LocalPlace::Odd(p) => search_odd(b, d, p),
        LocalPlace::T => search_t(b, d),
        LocalPlace::Infinite => true,
    })
}

/// Splits `g = π^v · u` at a finite place.
fn split_at(g: GaussianInt, place: LocalPlace) -> (u32, GaussianInt) {
    let v = place.valuation(g).unwrap();
    let pi = place.uniformizer();
    let mut u = g;
    for _ in 0..v {
        u = u.div_exact(pi).unwrap();
    }
    (v, u)
}

/// For each valuation pair, exponents of the three terms after dividing by
/// the minimum; pairs where the minimum is attained once are skipped.
fn term_patterns(v0: i32, v1: i32, v2: i32, cap: i32) -> BTreeSet<[u32; 3]> {
    let mut out = BTreeSet::new();
    for z in VALUATION_RANGE.0..=VALUATION_RANGE.1 {
        for w in VALUATION_RANGE.0..=VALUATION_RANGE.1 {
            let vals = [v0, v1 + 4 * z, v2 + 2 * w];
            let mu = *vals.iter().min().unwrap();
            if vals.iter().filter(|&&v| v == mu).count() < 2 {
                continue;
            }
            out.insert(vals.map(|v| (v - mu).min(cap) as u32));
        }
    }
    out
}

// f = d² − 4b z⁴ − d w² at an odd prime p dividing b.
fn search_odd(b: GaussianInt, d: GaussianInt, p: GaussianInt) -> bool {
    let place = LocalPlace::Odd(p);
    let (vb, ub) = split_at(b, place);
    let (vd, ud) = split_at(d, place);
    let p2 = p * p;
    // coefficients modulo p²: the minimal gradient valuation is 0, so only
    // g mod p matters for the criterion
    let (ub, ud) = (ub.rem(p2), ud.rem(p2));
    let c0 = (ud * ud).rem(p2);
    let c1 = (-GaussianInt::from_int(4) * ub).rem(p2);
    let c2 = (-ud).rem(p2);
    let field = ResidueField::new(p);
    let squares = field.power_roots(2);
    let patterns = term_patterns(2 * vd as i32, vb as i32, vd as i32, 1);
    for [e0, e1, e2] in patterns {
        let scale = |c: GaussianInt, e: u32| (c * p.pow(e)).rem(p2);
        let poly = LocalPoly::new(vec![
            (scale(c0, e0), 0, 0),
            (scale(c1, e1), 4, 0),
            (scale(c2, e2), 0, 2),
        ]);
        let (f0, f1, f2) = (field.from(poly.terms[0].0), field.from(poly.terms[1].0), field.from(poly.terms[2].0));
        let f2_inv = (e2 == 0).then(|| field.inv(f2));
        for x in field.units() {
            let x4 = field.mul(field.mul(x, x), field.mul(x, x));
            let rest = field.add(f0, field.mul(f1, x4));
            // need f2·y² ≡ −rest with y a unit
            let y = match f2_inv {
                Some(inv) => {
                    let y2 = field.mul(field.neg(rest), inv);
                    match squares.get(&y2) {
                        Some(&y) => y,
                        None => continue,
                    }
                }
                None if rest == (0, 0) => (1, 0),
                None => continue,
            };
            if hensel_criterion(&poly, (field.to_gaussian(x), field.to_gaussian(y)), place) {
                return true;
            }
        }
    }
    false
}

// With −4 = (1+i)^4 the curve is dw² = d² + b z'^4 at 1+i.
fn search_t(b: GaussianInt, d: GaussianInt) -> bool {
    let place = LocalPlace::T;
    let (tb, ub) = b.split_t();
    let (td, ud) = d.split_t();
    let modulus = 10;
    let (ub, ud) = (canonical_mod_t(ub, modulus), canonical_mod_t(ud, modulus));
    let units = enumerate_odd_units(9).unwrap();
    let mut fourth: HashMap<GaussianInt, GaussianInt> = HashMap::new();
    let mut second: HashMap<GaussianInt, GaussianInt> = HashMap::new();
    for u in &units {
        let x = u.value();
        fourth.entry(canonical_mod_t(x.pow(4), 9)).or_insert(x);
        second.entry(canonical_mod_t(x.pow(2), 9)).or_insert(x);
    }
    let patterns = term_patterns(2 * td as i32, tb as i32, td as i32, modulus as i32);
    for [e0, e1, e2] in patterns {
        let scale = |c: GaussianInt, e: u32| canonical_mod_t(c * T.pow(e), modulus);
        let poly = LocalPoly::new(vec![
            (scale(ud * ud, e0), 0, 0),
            (scale(ub, e1), 4, 0),
            (scale(-ud, e2), 0, 2),
        ]);
        for &x in fourth.values() {
            for &y in second.values() {
                if hensel_criterion(&poly, (x, y), place) {
                    return true;
                }
            }
        }
    }
    false
}

/// One sampled comparison between the point search and the symbol-based
/// verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub b: GaussianInt,
    pub d: GaussianInt,
    pub place: LocalPlace,
    pub search: bool,
    pub symbols: bool,
    /// The `1+i` verdict with the alternative exponent `2k + t_d` in (C).
    pub symbols_plus: Option<bool>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.search == self.symbols
    }
}

/// Compares [`cd_point_search`] with the symbol verdicts on `samples`
/// pseudo-random `(b, d, place)` triples drawn from `curves`, half of them at
/// `1+i`.
pub fn hensel_cross_check(curves: &[PrimaryFactorization], samples: usize, seed: u64) -> Result<Vec<CrossCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    if curves.is_empty() {
        return Ok(out);
    }
    while out.len() < samples {
        let b = curves.choose(&mut rng).unwrap();
        let k = b.odd_part.len();
        let mask: u64 = rng.gen_range(0..1u64 << k);
        let d = DivisorClass {
            s: rng.gen_range(0..2),
            t: rng.gen_range(0..2),
            odd: (0..k).filter(|&v| mask >> v & 1 == 1).collect(),
        };
        let at_t = k == 0 || out.len() % 2 == 0;
        let d_value = d.odd.iter().fold(ONE.mul_i_pow(d.s as u32) * T.pow(d.t as u32), |acc, &v| {
            acc * b.odd_part[v].0
        });
        let b_value = b.recompose();
        let record = if at_t {
            let minus = lsc_at_t_direct(b, &d, ExponentConvention::Minus)?.holds();
            let plus = lsc_at_t_direct(b, &d, ExponentConvention::Plus)?.holds();
            CrossCheck {
                b: b_value,
                d: d_value,
                place: LocalPlace::T,
                search: cd_point_search(b_value, d_value, LocalPlace::T)?,
                symbols: minus,
                symbols_plus: Some(plus),
            }
        } else {
            let v = rng.gen_range(0..k);
            let place = LocalPlace::Odd(b.odd_part[v].0);
            CrossCheck {
                b: b_value,
                d: d_value,
                place,
                search: cd_point_search(b_value, d_value, place)?,
                symbols: lsc_at_place_direct(b, &d, v)?,
                symbols_plus: None,
            }
        };
        out.push(record);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::factor;

    fn g(re: i128, im: i128) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn exact_root_accepted() {
        // X² − 4 at (2, ·)
        let f = LocalPoly::new(vec![(ONE, 2, 0), (g(-4, 0), 0, 0)]);
        assert!(hensel_criterion(&f, (g(2, 0), ONE), LocalPlace::T));
    }

    #[test]
    fn hensel_for_square_roots() {
        // 4 ≡ 2² mod (−1+2i), gradient 2·2 is a unit there
        let p = g(-1, 2);
        let f = LocalPoly::new(vec![(ONE, 2, 0), (g(-9, 0), 0, 0)]);
        assert!(hensel_criterion(&f, (g(-2, 0) + p, ONE), LocalPlace::Odd(p)));
        // X² − i has no root near 1 at 1+i: v(1 − i) = 1, not > 2·v(2) = 4
        let f = LocalPoly::new(vec![(ONE, 2, 0), (-I, 0, 0)]);
        assert!(!hensel_criterion(&f, (ONE, ONE), LocalPlace::T));
    }

    #[test]
    fn residue_fields() {
        for p in [g(-1, 2), g(-3, 0), g(3, 2), g(-7, 0)] {
            let field = ResidueField::new(p);
            assert_eq!(field.units().count() as u128, p.norm() - 1);
            // the map is a ring homomorphism on a few samples
            for (a, c) in [(g(2, 3), g(-5, 1)), (g(7, -4), g(1, 1))] {
                assert_eq!(field.mul(field.from(a), field.from(c)), field.from(a * c));
                assert_eq!(field.add(field.from(a), field.from(c)), field.from(a + c));
            }
            assert_eq!(field.from(p), (0, 0));
        }
    }

    #[test]
    fn trivial_divisor_has_points() {
        for b in [g(-1, 2), g(3, 5), g(2, 0), g(-7, 0)] {
            let f = factor(b).unwrap();
            for place in places_of(&f) {
                assert!(cd_point_search(b, ONE, place).unwrap(), "b={b} at {place}");
            }
        }
    }

    #[test]
    fn invalid_place() {
        assert!(cd_point_search(g(-1, 2), ONE, LocalPlace::Odd(g(-3, 0))).is_err());
    }

    #[test]
    fn direct_d_one() {
        for b in [g(-1, 2), g(15, 0), g(4, 1), g(-9, 0)] {
            let f = factor(b).unwrap();
            if !f.is_fourth_power_free() {
                continue;
            }
            assert!(lsc_away_direct(&f, &DivisorClass::one()).unwrap());
        }
    }
}
