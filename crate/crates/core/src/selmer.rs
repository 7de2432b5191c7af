//! φ-Selmer groups via the modified Laplacian: four affine systems over 𝔽₂
//! followed by the residue test at `1+i`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector};
use crate::gaussian::{GaussianInt, PrimaryFactorization, ONE, T};
use crate::graph::{build_graph, SelmerGraph};
use crate::residue_units::{canonical_mod_t, enumerate_odd_units, mn_exponents};

/// A square-free divisor `i^s (1+i)^t ∏ v` of `2b`, with `odd` listing
/// indices into the graph's vertices in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    pub s: u8,
    pub t: u8,
    pub odd: Vec<usize>,
}

impl DivisorClass {
    pub fn one() -> Self {
        DivisorClass { s: 0, t: 0, odd: Vec::new() }
    }

    pub fn new(s: u8, t: u8, mut odd: Vec<usize>) -> Self {
        odd.sort_unstable();
        odd.dedup();
        DivisorClass { s: s % 2, t: t % 2, odd }
    }

    pub fn is_one(&self) -> bool {
        self.s == 0 && self.t == 0 && self.odd.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.odd.binary_search(&v).is_ok()
    }

    /// Product modulo squares. `i² = −1 = i·i`, `(1+i)²` and `v²` are all
    /// squares, so exponents add mod 2 and vertex sets combine by symmetric
    /// difference.
    pub fn product(&self, other: &DivisorClass) -> DivisorClass {
        let a: BTreeSet<usize> = self.odd.iter().copied().collect();
        let b: BTreeSet<usize> = other.odd.iter().copied().collect();
        DivisorClass {
            s: self.s ^ other.s,
            t: self.t ^ other.t,
            odd: a.symmetric_difference(&b).copied().collect(),
        }
    }

    pub fn validate(&self, graph: &SelmerGraph) -> Result<()> {
        if self.s > 1 || self.t > 1 {
            return Err(Error::InvalidDivisor(format!("exponents ({}, {}) not in {{0,1}}", self.s, self.t)));
        }
        if self.odd.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDivisor("vertex list not strictly ascending".into()));
        }
        if let Some(&v) = self.odd.iter().find(|&&v| v >= graph.len()) {
            return Err(Error::InvalidDivisor(format!("vertex {v} out of range")));
        }
        Ok(())
    }

    /// The odd part `i^s ∏ v` (without the power of `1+i`).
    pub fn odd_value(&self, graph: &SelmerGraph) -> GaussianInt {
        self.odd
            .iter()
            .fold(ONE.mul_i_pow(self.s as u32), |acc, &v| acc * graph.vertices[v].prime)
    }

    pub fn value(&self, graph: &SelmerGraph) -> GaussianInt {
        self.odd_value(graph) * T.pow(self.t as u32)
    }

    /// Human-readable product such as `i*(1+i)*(-1+2i)*(-127)`.
    pub fn describe(&self, graph: &SelmerGraph) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.s == 1 {
            parts.push("i".into());
        }
        if self.t == 1 {
            parts.push("(1+i)".into());
        }
        for &v in &self.odd {
            parts.push(format!("({})", graph.vertices[v].prime));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// `L'_b` with the bookkeeping of how it was derived from `L(G_b) mod 2`.
#[derive(Clone, Debug)]
pub struct ModifiedLaplacian {
    pub matrix: F2Matrix,
    /// Vertex indices of the rows/columns, ascending.
    pub retained: Vec<usize>,
    /// q-vertices whose row and column were removed.
    pub deleted: Vec<usize>,
    /// Vertices whose diagonal entry was incremented.
    pub bumped: Vec<usize>,
}

fn twist(graph: &SelmerGraph, v: usize) -> u32 {
    let vx = &graph.vertices[v];
    vx.m4() * graph.t_b + vx.n4() * graph.s_b as u32
}

/// Builds `L'_b`: `L(G_b) mod 2`, minus the q-vertices whose parity
/// condition fails, plus the diagonal corrections for p- and q-vertices.
pub fn build_modified_laplacian(graph: &SelmerGraph) -> ModifiedLaplacian {
    let k = graph.len();
    let mut deleted = Vec::new();
    let mut bumped = Vec::new();
    let mut retained = Vec::new();
    let mut diag_bump = vec![false; k];
    for v in 0..k {
        let c = twist(graph, v);
        if graph.vertices[v].is_q() {
            let deg13 = graph.degree(v, &[1, 3]).unwrap();
            if (deg13 + c) % 2 == 1 {
                deleted.push(v);
                continue;
            }
            let deg1 = graph.degree(v, &[1]).unwrap();
            let deg3 = graph.degree(v, &[3]).unwrap();
            let n = graph.vertices[v].n4();
            diag_bump[v] = (deg1 + 3 * deg3) % 4 == (c + 2 * (n + 1)) % 4;
        } else {
            let deg2 = graph.degree(v, &[2]).unwrap();
            diag_bump[v] = (deg2 + c) % 2 == 1;
        }
        retained.push(v);
    }
    let laplacian = graph.laplacian_z4();
    let rows: Vec<Vec<u8>> = retained
        .iter()
        .map(|&v| {
            retained
                .iter()
                .map(|&w| (laplacian[v][w] + (v == w && diag_bump[v]) as u8) % 2)
                .collect()
        })
        .collect();
    for &v in &retained {
        if diag_bump[v] {
            bumped.push(v);
        }
    }
    let mut matrix = F2Matrix::from_rows(&rows, retained.len()).expect("square by construction");
    matrix.labels = Some(retained.iter().map(|&v| graph.vertices[v].prime.to_string()).collect());
    ModifiedLaplacian { matrix, retained, deleted, bumped }
}

/// `y_v = m_v t_d + n_v s_d mod 2` for each retained vertex.
pub fn target_vector(graph: &SelmerGraph, retained: &[usize], s_d: u8, t_d: u8) -> F2Vector {
    let bits: Vec<u8> = retained
        .iter()
        .map(|&v| {
            let vx = &graph.vertices[v];
            ((vx.m4() * t_d as u32 + vx.n4() * s_d as u32) % 2) as u8
        })
        .collect();
    F2Vector::from_bits(&bits)
}

/// Which of the three residue conditions at `1+i` hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LscVerdict {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl LscVerdict {
    pub fn holds(self) -> bool {
        self.a || self.b || self.c
    }

    pub fn label(self) -> String {
        let mut s = String::new();
        for (flag, name) in [(self.a, "A"), (self.b, "B"), (self.c, "C")] {
            if flag {
                s.push_str(name);
            }
        }
        if s.is_empty() {
            s.push('-');
        }
        s
    }
}

/// Sign of the `1+i` exponent in condition (C).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentConvention {
    /// `α₀² (1+i)^{2k − t_d}`.
    Minus,
    /// `α₀² (1+i)^{2k + t_d}`.
    Plus,
}

fn eq_mod_t(a: GaussianInt, b: GaussianInt, k: u32) -> bool {
    canonical_mod_t(a - b, k).is_zero()
}

/// The odd part of `b` reduced mod `(1+i)^7`.
fn odd_part_mod_t7(b: &PrimaryFactorization) -> GaussianInt {
    let mut acc = ONE.mul_i_pow(b.s as u32);
    for &(p, e) in &b.odd_part {
        for _ in 0..e {
            acc = canonical_mod_t(acc * canonical_mod_t(p, 7), 7);
        }
    }
    acc
}

fn odd_squares_mod_t7() -> &'static [GaussianInt] {
    static SQUARES: std::sync::OnceLock<Vec<GaussianInt>> = std::sync::OnceLock::new();
    SQUARES.get_or_init(|| {
        let mut sq: Vec<GaussianInt> = enumerate_odd_units(7)
            .unwrap()
            .into_iter()
            .map(|u| canonical_mod_t(u.value() * u.value(), 7))
            .collect();
        sq.sort();
        sq.dedup();
        sq
    })
}

/// Evaluates the residue conditions (A), (B), (C) at `1+i` for
/// `b₀ = b/(1+i)^{t_b}`, `d₀ = d/(1+i)^{t_d}` given modulo `(1+i)^7`.
pub fn lsc_at_t_residues(
    b0: GaussianInt,
    t_b: u32,
    d0: GaussianInt,
    t_d: u32,
    convention: ExponentConvention,
) -> LscVerdict {
    let signs = [ONE, -ONE];
    let a = t_b % 2 == t_d % 2
        && (0..=2).any(|k| {
            let tk = T.pow(4 * k + t_b);
            signs.iter().any(|&e| eq_mod_t(b0, d0 * (e - d0 * tk), 5))
        });
    let b = t_d == 0
        && (0..=2).any(|k| {
            let lhs = b0 * T.pow(4 * k + t_b);
            signs.iter().any(|&e| eq_mod_t(lhs, d0 * (e - d0), 5))
        });
    let c = t_b == 2 * t_d
        && (1..=5u32).any(|k| {
            let exp = match convention {
                ExponentConvention::Minus => 2 * k - t_d,
                ExponentConvention::Plus => 2 * k + t_d,
            };
            let tk = T.pow(exp);
            odd_squares_mod_t7()
                .iter()
                .any(|&sq| eq_mod_t(b0, -d0 * (d0 - sq * tk), 7))
        });
    LscVerdict { a, b, c }
}

/// The residue test at `1+i` for the divisor class `d` of `b`.
pub fn lsc_at_t(b: &PrimaryFactorization, graph: &SelmerGraph, d: &DivisorClass) -> Result<LscVerdict> {
    lsc_at_t_with(b, graph, d, ExponentConvention::Minus)
}

pub fn lsc_at_t_with(
    b: &PrimaryFactorization,
    graph: &SelmerGraph,
    d: &DivisorClass,
    convention: ExponentConvention,
) -> Result<LscVerdict> {
    d.validate(graph)?;
    let d0 = canonical_mod_t(d.odd_value(graph), 7);
    Ok(lsc_at_t_residues(odd_part_mod_t7(b), b.t, d0, d.t as u32, convention))
}

/// A solution of one of the four systems, with its verdict at `1+i`.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub class: DivisorClass,
    pub verdict: LscVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemTrace {
    pub s: u8,
    pub t: u8,
    pub target: Vec<u8>,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug)]
pub struct SelmerGroup {
    pub b: PrimaryFactorization,
    pub graph: SelmerGraph,
    pub laplacian: ModifiedLaplacian,
    pub systems: Vec<SystemTrace>,
    pub elements: BTreeSet<DivisorClass>,
}

/// Computes the φ-Selmer group of `y² = x³ + bx`.
pub fn compute_selmer_group(b: &PrimaryFactorization) -> Result<SelmerGroup> {
    let graph = build_graph(b)?;
    let laplacian = build_modified_laplacian(&graph);
    let mut systems = Vec::with_capacity(4);
    let mut elements = BTreeSet::new();
    for (s, t) in [(0u8, 0u8), (1, 0), (0, 1), (1, 1)] {
        let y = target_vector(&graph, &laplacian.retained, s, t);
        let solutions = laplacian.matrix.solve_all(&y, None)?;
        let mut candidates = Vec::with_capacity(solutions.len());
        for x in solutions {
            let odd = x.ones().into_iter().map(|k| laplacian.retained[k]).collect();
            let class = DivisorClass::new(s, t, odd);
            let verdict = lsc_at_t(b, &graph, &class)?;
            if verdict.holds() {
                elements.insert(class.clone());
            }
            candidates.push(Candidate { class, verdict });
        }
        systems.push(SystemTrace { s, t, target: y.to_bits(), candidates });
    }
    Ok(SelmerGroup { b: b.clone(), graph, laplacian, systems, elements })
}

impl SelmerGroup {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.elements.contains(d)
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.elements.iter().all(|y| self.elements.contains(&x.product(y))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.graph;
        serde_json::json!({
            "b": self.b.recompose().to_string(),
            "s_b": self.b.s,
            "t_b": self.b.t,
            "primes": g.vertices.iter().map(|v| serde_json::json!({
                "value": v.prime.to_string(),
                "kind": v.kind(),
                "exponent": v.exponent,
                "m": v.m4(),
                "n": v.n4(),
            })).collect::<Vec<_>>(),
            "retained": self.laplacian.retained.iter().map(|&v| g.vertices[v].prime.to_string()).collect::<Vec<_>>(),
            "deleted": self.laplacian.deleted.iter().map(|&v| g.vertices[v].prime.to_string()).collect::<Vec<_>>(),
            "matrix": self.laplacian.matrix.to_bits(),
            "systems": self.systems.iter().map(|sys| serde_json::json!({
                "s": sys.s,
                "t": sys.t,
                "target": sys.target,
                "candidates": sys.candidates.iter().map(|c| serde_json::json!({
                    "divisor": c.class.describe(g),
                    "lsc": c.verdict.label(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "elements": self.elements.iter().map(|d| serde_json::json!({
                "s": d.s,
                "t": d.t,
                "odd": d.odd.iter().map(|&v| g.vertices[v].prime.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "size": self.size(),
        })
    }

    /// Multi-line report of every pipeline stage.
    pub fn report(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let _ = writeln!(out, "b = {}", self.b.recompose());
        let _ = writeln!(out, "s_b = {}, t_b = {}", self.b.s, self.b.t);
        for v in &g.vertices {
            let _ = writeln!(
                out,
                "  {:>12}  {}  e={}  m={} n={}",
                v.prime.to_string(),
                v.kind(),
                v.exponent,
                v.m4(),
                v.n4()
            );
        }
        let names = |vs: &[usize]| vs.iter().map(|&v| g.vertices[v].prime.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "retained: [{}]", names(&self.laplacian.retained));
        let _ = writeln!(out, "deleted:  [{}]", names(&self.laplacian.deleted));
        let _ = writeln!(out, "diagonal +1: [{}]", names(&self.laplacian.bumped));
        let _ = writeln!(out, "L'_b:");
        for row in self.laplacian.matrix.to_bits() {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "  [{}]", cells.join(" "));
        }
        for sys in &self.systems {
            let y: Vec<String> = sys.target.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "system (s,t)=({},{}), y=({}):", sys.s, sys.t, y.join(","));
            if sys.candidates.is_empty() {
                let _ = writeln!(out, "  no solutions");
            }
            for c in &sys.candidates {
                let _ = writeln!(out, "  {:<40} at 1+i: {}", c.class.describe(g), c.verdict.label());
            }
        }
        let _ = writeln!(out, "Selmer group ({} elements):", self.size());
        for d in &self.elements {
            let _ = writeln!(out, "  {}", d.describe(g));
        }
        out
    }
}

/// `2^{N − r + 1}` for `b = ±(1+i)^{2t} q₁² ⋯ q_N²` with every `q_j ≡ 1 mod (1+i)^7`,
/// where `r` is the 𝔽₂-rank of the Laplacian.
pub fn selmer_size_square_b(b: &PrimaryFactorization) -> Result<usize> {
    if !b.s.is_multiple_of(2) || !b.t.is_multiple_of(2) || b.t > 2 {
        return Err(Error::Hypothesis("unit and 1+i exponents must be 0 or 2".into()));
    }
    for &(q, e) in &b.odd_part {
        if e != 2 {
            return Err(Error::Hypothesis(format!("{q} has exponent {e}, expected 2")));
        }
        if mn_exponents(q)?.mod4() != (0, 0) {
            return Err(Error::Hypothesis(format!("{q} is not 1 mod (1+i)^7")));
        }
    }
    let graph = build_graph(b)?;
    let rows: Vec<Vec<u8>> = graph
        .laplacian_z4()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x % 2).collect())
        .collect();
    let r = F2Matrix::from_rows(&rows, graph.len())?.rank();
    Ok(1usize << (graph.len() - r + 1))
}

/// The class `i^{s_b mod 2} (1+i)^{t_b mod 2} ∏ p` over the odd-exponent
/// primes, always a member of the group.
pub fn odd_exponent_class(graph: &SelmerGraph) -> DivisorClass {
    DivisorClass::new(
        graph.s_b % 2,
        (graph.t_b % 2) as u8,
        (0..graph.len()).filter(|&v| !graph.vertices[v].is_q()).collect(),
    )
}
