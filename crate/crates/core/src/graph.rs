//! The directed graph on the odd primes of `b` with ℤ/4 edge weights
//! `log [w/v]₄`, its degree functions and its Laplacian.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, PrimaryFactorization};
use crate::quartic::symbol_exp;
use crate::residue_units::mn_exponents;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub prime: GaussianInt,
    /// Exponent of the prime in `b`; odd exponents are "p-type", 2 is "q-type".
    pub exponent: u32,
    /// `m` and `n` in ℤ/8.
    pub m: u8,
    pub n: u8,
}

impl Vertex {
    pub fn is_q(&self) -> bool {
        self.exponent == 2
    }

    pub fn kind(&self) -> &'static str {
        if self.is_q() {
            "q"
        } else {
            "p"
        }
    }

    pub fn m4(&self) -> u32 {
        (self.m % 4) as u32
    }

    pub fn n4(&self) -> u32 {
        (self.n % 4) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelmerGraph {
    pub vertices: Vec<Vertex>,
    /// `weights[v][w] = log [w/v]₄`, zero on the diagonal.
    pub weights: Vec<Vec<u8>>,
    pub s_b: u8,
    pub t_b: u32,
}

pub fn build_graph(f: &PrimaryFactorization) -> Result<SelmerGraph> {
    if !f.is_fourth_power_free() {
        return Err(Error::NotFourthPowerFree);
    }
    let vertices = f
        .odd_part
        .iter()
        .map(|&(prime, exponent)| {
            let mn = mn_exponents(prime)?;
            Ok(Vertex { prime, exponent, m: mn.m, n: mn.n })
        })
        .collect::<Result<Vec<_>>>()?;
    let k = vertices.len();
    let mut weights = vec![vec![0u8; k]; k];
    for v in 0..k {
        for w in 0..k {
            if v != w {
                weights[v][w] = symbol_exp(vertices[w].prime, vertices[v].prime)?.log;
            }
        }
    }
    Ok(SelmerGraph { vertices, weights, s_b: f.s, t_b: f.t })
}

impl SelmerGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, prime: GaussianInt) -> Option<usize> {
        self.vertices.iter().position(|v| v.prime == prime)
    }

    /// Integer sum of `weights[v][w]` over `w ≠ v` accepted by `member`.
    pub fn degree_where(&self, v: usize, member: impl Fn(usize) -> bool) -> Result<u32> {
        let row = self.weights.get(v).ok_or(Error::UnknownVertex(v))?;
        Ok((0..self.len())
            .filter(|&w| w != v && member(w))
            .map(|w| row[w] as u32)
            .sum())
    }

    /// Integer sum of weights from `v` to vertices whose exponent is listed
    /// in `kinds`.
    pub fn degree(&self, v: usize, kinds: &[u32]) -> Result<u32> {
        self.degree_where(v, |w| kinds.contains(&self.vertices[w].exponent))
    }

    pub fn total_degree(&self, v: usize) -> Result<u32> {
        self.degree_where(v, |_| true)
    }

    /// `diag(deg) − A` over ℤ/4.
    pub fn laplacian_z4(&self) -> Vec<Vec<u8>> {
        let k = self.len();
        (0..k)
            .map(|v| {
                (0..k)
                    .map(|w| {
                        if v == w {
                            (self.total_degree(v).unwrap() % 4) as u8
                        } else {
                            (4 - self.weights[v][w]) % 4
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "s_b": self.s_b,
            "t_b": self.t_b,
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "prime": v.prime.to_string(),
                "exponent": v.exponent,
                "kind": v.kind(),
                "m": v.m4(),
                "n": v.n4(),
            })).collect::<Vec<_>>(),
            "weights": self.weights,
        })
    }

    /// Graphviz rendering; edges with weight 0 are omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  v{k} [label=\"{} ({}, e={}, m={}, n={})\"];\n",
                v.prime,
                v.kind(),
                v.exponent,
                v.m4(),
                v.n4()
            ));
        }
        for (v, row) in self.weights.iter().enumerate() {
            for (w, &x) in row.iter().enumerate() {
                if v != w && x != 0 {
                    out.push_str(&format!("  v{v} -> v{w} [label=\"{x}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
