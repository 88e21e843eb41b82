//! The destabilizing subcomplex `T_x` of the rational Tits complex and its
//! reduced rational homology.

use serde::Serialize;

use crate::finflag::{Field, FlagPoint};
use crate::linalg;
use crate::semistable::{PointSet, Verifier, VerifierKind};
use crate::{Error, Result};

/// Flag complex on pairwise incident vertices. `simplices[k]` lists the
/// `k`-simplices as increasing vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsSubcomplex {
    /// Indices into the verifier's rational test set.
    pub vertices: Vec<usize>,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl TitsSubcomplex {
    /// Clique complex of `incident` on `0..count`.
    pub fn from_incidence(vertices: Vec<usize>, incident: impl Fn(usize, usize) -> bool) -> Self {
        let count = vertices.len();
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..count).map(|v| vec![v]).collect()];
        while let Some(top) = simplices.last().filter(|s| !s.is_empty()) {
            let next: Vec<Vec<usize>> = top
                .iter()
                .flat_map(|s| {
                    let last = *s.last().unwrap();
                    ((last + 1)..count)
                        .filter(|&v| s.iter().all(|&u| incident(u, v)))
                        .map(|v| {
                            let mut t = s.clone();
                            t.push(v);
                            t
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            simplices.push(next);
        }
        simplices.pop();
        Self { vertices, simplices }
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// `Σ_k (-1)^k #k-simplices`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn chain_complex(&self) -> ChainComplexQ {
        let mut boundaries = vec![vec![vec![1i64; self.simplices[0].len()]]];
        for k in 1..self.simplices.len() {
            let faces = &self.simplices[k - 1];
            let index: std::collections::HashMap<&Vec<usize>, usize> =
                faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
            let mut m = vec![vec![0i64; self.simplices[k].len()]; faces.len()];
            for (j, s) in self.simplices[k].iter().enumerate() {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    m[index[&face]][j] = sign;
                }
            }
            boundaries.push(m);
        }
        ChainComplexQ { boundaries }
    }
}

/// Augmented simplicial chain complex: `boundaries[k]` is `∂_k : C_k → C_{k-1}`
/// with `C_{-1} = ℚ`, stored as a `dim C_{k-1} × dim C_k` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexQ {
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

impl ChainComplexQ {
    /// `∂_k ∘ ∂_{k+1} = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| mat_mul(&w[0], &w[1]).iter().flatten().all(|&x| x == 0))
    }

    fn rank(&self, k: usize) -> usize {
        self.boundaries.get(k).map_or(0, |m| linalg::integer_rank(m))
    }

    /// Reduced Betti numbers `b̃_0, …, b̃_top`.
    pub fn reduced_betti(&self) -> Vec<usize> {
        (0..self.boundaries.len())
            .map(|k| {
                let dim = self.boundaries[k].first().map_or(0, Vec::len);
                dim - self.rank(k) - self.rank(k + 1)
            })
            .collect()
    }
}

pub fn reduced_homology(c: &TitsSubcomplex) -> Result<Vec<usize>> {
    if c.vertices.is_empty() {
        return Err(Error::SemistablePoint);
    }
    Ok(c.chain_complex().reduced_betti())
}

/// `T_x`: destabilizing rational parabolics, with simplices the sets
/// contained in a common rational Borel.
pub fn build_t_x(verifier: &Verifier, set: &PointSet, x: &FlagPoint) -> Result<TitsSubcomplex> {
    let report = verifier.is_semistable(&set.tower, &set.tests, x);
    if report.semistable {
        return Err(Error::SemistablePoint);
    }
    let vertices: Vec<usize> = report.destabilizing.iter().map(|(i, _)| *i).collect();
    let field: &Field = &set.tower.field;
    let subspace = |v: usize| &set.tests[vertices[v]].filtration.steps[0].1;
    Ok(match verifier.kind {
        VerifierKind::SplitSl => TitsSubcomplex::from_incidence(vertices.clone(), |a, b| {
            let (u, w) = (subspace(a), subspace(b));
            u.is_subspace_of(field, w) || w.is_subspace_of(field, u)
        }),
        // Maximal rational parabolics of U_3 are Borels: no two are incident.
        VerifierKind::Unitary3 => TitsSubcomplex::from_incidence(vertices.clone(), |_, _| false),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub point: usize,
    pub simplices: Vec<usize>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub m: u32,
    pub points: usize,
    pub unstable: usize,
    pub entries: Vec<SweepEntry>,
    pub violations: Vec<usize>,
}

impl SweepReport {
    pub fn acyclic(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reduced homology of `T_x` for every non-semistable `x ∈ Fl(F_{q_E^m})`.
pub fn acyclicity_sweep(verifier: &Verifier, m: u32, fail_fast: bool) -> Result<SweepReport> {
    let set = verifier.points(m)?;
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for (i, x) in set.points.iter().enumerate() {
        let complex = match build_t_x(verifier, &set, x) {
            Ok(c) => c,
            Err(Error::SemistablePoint) => continue,
            Err(e) => return Err(e),
        };
        let chain = complex.chain_complex();
        if !chain.is_complex() {
            return Err(Error::Invariant("boundary of boundary is nonzero".into()));
        }
        let betti = chain.reduced_betti();
        let reduced_euler: i64 = betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        if complex.euler_characteristic() - 1 != reduced_euler {
            return Err(Error::Invariant("Euler characteristic disagrees with Betti numbers".into()));
        }
        if betti.iter().any(|&b| b != 0) {
            violations.push(i);
        }
        entries.push(SweepEntry { point: i, simplices: complex.counts(), betti });
        if fail_fast && !violations.is_empty() {
            break;
        }
    }
    Ok(SweepReport { m, points: set.points.len(), unstable: entries.len(), entries, violations })
}
