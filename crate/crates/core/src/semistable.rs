//! Brute-force semistability for `SL_n` and quasi-split `U_3` over finite
//! fields: filtration pairings, slopes, the `Y_I` strata and their Bruhat
//! cells, and semistable point counts.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohom::{self, GroupDatum, OrbitSet};
use crate::finflag::{
    self, enumerate_flag_points, enumerate_subspaces, Elem, FieldTower, FlagPoint, HermitianData, Subspace,
};
use crate::rootdata::Family;
use crate::{Error, Rational, Result};

/// A decreasing filtration: `steps[i] = (a_i, F^{a_i})` with `a_i` strictly
/// decreasing and `F^{a_i}` strictly increasing up to the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filtration {
    pub steps: Vec<(Rational, Subspace)>,
}

impl Filtration {
    pub fn new(steps: Vec<(Rational, Subspace)>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidFiltration(why.to_string()));
        let Some((_, last)) = steps.last() else {
            return bad("no steps");
        };
        if last.dim() != last.ambient() {
            return bad("last step is not the ambient space");
        }
        for pair in steps.windows(2) {
            if pair[0].0 <= pair[1].0 || pair[0].1.dim() >= pair[1].1.dim() {
                return bad("weights must decrease while subspaces grow");
            }
        }
        Ok(Self { steps })
    }

    pub fn from_flag(x: &FlagPoint) -> Self {
        Self { steps: x.weights.iter().cloned().zip(x.chain.iter().cloned()).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.steps.last().map_or(0, |(_, s)| s.ambient())
    }

    /// The same filtration with every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: Rational) -> Self {
        assert!(c.is_positive());
        Self { steps: self.steps.iter().map(|(a, s)| (a * c, s.clone())).collect() }
    }
}

/// `(F, F') = Σ_{a,b} a·b·dim gr^a_F gr^b_{F'} V`.
pub fn filtration_pairing(field: &finflag::Field, f: &Filtration, g: &Filtration) -> Result<Rational> {
    let n = f.ambient();
    if g.ambient() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.ambient() });
    }
    // d[i][j] = dim(F_i ∩ G_j), with index 0 the zero space.
    let (r, s) = (f.steps.len(), g.steps.len());
    let mut d = vec![vec![0i64; s + 1]; r + 1];
    for i in 1..=r {
        for j in 1..=s {
            let (a, b) = (&f.steps[i - 1].1, &g.steps[j - 1].1);
            d[i][j] = if b.dim() == n {
                a.dim()
            } else if a.dim() == n {
                b.dim()
            } else {
                a.intersection_dim(field, b)
            } as i64;
        }
    }
    let mut total = Rational::zero();
    for i in 1..=r {
        for j in 1..=s {
            let graded = d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1];
            if graded != 0 {
                total += f.steps[i - 1].0 * g.steps[j - 1].0 * Rational::from(graded);
            }
        }
    }
    Ok(total)
}

/// Filtration of the fundamental coweight of node `d = dim W` moved onto
/// `W`: weight `(n-d)/n` on `W` and `-d/n` on `V`.
pub fn subspace_coweight_filtration(w: &Subspace, n: usize) -> Result<Filtration> {
    let d = w.dim();
    if w.ambient() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.ambient() });
    }
    if d == 0 || d == n {
        return Err(Error::InvalidFiltration("coweight subspace must be proper and nonzero".into()));
    }
    let (n_, d_) = (n as i64, d as i64);
    Filtration::new(vec![
        (Rational::new(n_ - d_, n_), w.clone()),
        (Rational::new(-d_, n_), Subspace::full(n)),
    ])
}

/// `μ^L(x, λ) = -(F_x, F_λ)`.
pub fn slope(field: &finflag::Field, x: &FlagPoint, lambda: &Filtration) -> Result<Rational> {
    Ok(-filtration_pairing(field, &Filtration::from_flag(x), lambda)?)
}

/// Verdict for one point against the full rational test set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub semistable: bool,
    /// Indices into the test set with negative slope, and the slopes.
    #[serde(skip)]
    pub destabilizing: Vec<(usize, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifierKind {
    /// Split `SL_n`; rational structure `x ↦ x^q`.
    SplitSl,
    /// Quasi-split `U_3` for the antidiagonal Hermitian form.
    Unitary3,
}

/// A rational test filtration `g ω̃*_α g^{-1}` with its `ᾱ`.
#[derive(Clone, Debug)]
pub struct TestFiltration {
    pub orbit: usize,
    pub filtration: Filtration,
}

/// Points of `Fl(F_{q_E^m})` together with the field they live in and the
/// rational test set embedded in that field.
pub struct PointSet {
    pub tower: FieldTower,
    pub points: Vec<FlagPoint>,
    pub tests: Vec<TestFiltration>,
}

pub struct Verifier<'a> {
    pub data: &'a GroupDatum,
    pub kind: VerifierKind,
    pub n: usize,
    pub q: u64,
    pub mu: Vec<Rational>,
    pub budget: u128,
}

impl<'a> Verifier<'a> {
    pub fn new(data: &'a GroupDatum, q: u64, budget: u128) -> Result<Self> {
        let unsupported = |why: &str| Err(Error::UnsupportedVerifier(why.to_string()));
        match data.root.cartan_type.as_slice() {
            [c] if c.family == Family::A => {}
            _ => return unsupported("only a single factor of type A is brute-forced"),
        }
        finflag::prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let n = data.root.ambient_dim;
        let kind = if data.is_split() {
            VerifierKind::SplitSl
        } else if n == 3 && data.galois.order == 2 {
            VerifierKind::Unitary3
        } else {
            return unsupported("twisted groups other than U_3");
        };
        Ok(Self { data, kind, n, q, mu: data.mu.coords.clone(), budget })
    }

    /// Degree over `F_q` of the field of definition of the points counted
    /// at `m`, i.e. `[E:k]·m`.
    pub fn point_degree(&self, m: u32) -> u32 {
        self.data.muclass.e_degree as u32 * m
    }

    fn hermitian(&self) -> HermitianData {
        HermitianData::new(3, self.q)
    }

    /// The `k`-Frobenius on points.
    pub fn frobenius(&self, tower: &FieldTower, x: &FlagPoint) -> FlagPoint {
        match self.kind {
            VerifierKind::SplitSl => finflag::frobenius(tower, x),
            VerifierKind::Unitary3 => self.hermitian().twisted_frobenius(tower, x),
        }
    }

    /// Field used to realize `Fl(F_{q^N})`.
    fn tower_degree(&self, degree: u32) -> u32 {
        match self.kind {
            VerifierKind::Unitary3 if degree % 2 == 1 => 2 * degree,
            _ => degree,
        }
    }

    /// Number of flags enumerated at `m`, or `None` if the field is too
    /// large for the tables.
    pub fn estimate_points(&self, m: u32) -> Option<u128> {
        let size = (self.q as u128).checked_pow(self.tower_degree(self.point_degree(m)))?;
        if size > finflag::MAX_FIELD_SIZE as u128 {
            return None;
        }
        let (_, dims) = finflag::flag_type(&self.mu);
        Some(finflag::flag_count(self.n, &dims, size))
    }

    /// Rational test filtrations, embedded in `tower`.
    pub fn test_filtrations(&self, tower: &FieldTower) -> Result<Vec<TestFiltration>> {
        match self.kind {
            VerifierKind::SplitSl => {
                let base = tower.base();
                let mut out = Vec::new();
                for d in 1..self.n {
                    for w in enumerate_subspaces(self.n, d, &base, self.budget)? {
                        out.push(TestFiltration { orbit: d - 1, filtration: subspace_coweight_filtration(&w, self.n)? });
                    }
                }
                Ok(out)
            }
            VerifierKind::Unitary3 => {
                let h = self.hermitian();
                Ok(self
                    .rational_borels(tower, &h)?
                    .into_iter()
                    .map(|x| TestFiltration { orbit: 0, filtration: Filtration::from_flag(&x) })
                    .collect())
            }
        }
    }

    /// `F`-fixed full flags over `F_{q²}` with weights `(1, 0, -1)`.
    fn rational_borels(&self, tower: &FieldTower, h: &HermitianData) -> Result<Vec<FlagPoint>> {
        let borel = [Rational::from(1), Rational::zero(), Rational::from(-1)];
        let quadratic = tower.intermediate(2);
        Ok(enumerate_flag_points(&tower.field, &borel, &quadratic, self.budget)?
            .into_iter()
            .filter(|x| h.twisted_frobenius(tower, x) == *x)
            .collect())
    }

    /// All points of `Fl(F_{q_E^m})`.
    pub fn points(&self, m: u32) -> Result<PointSet> {
        let degree = self.point_degree(m);
        let tower = FieldTower::new(self.q, self.tower_degree(degree))?;
        let all: Vec<Elem> = tower.field.elements().collect();
        let points = match self.kind {
            VerifierKind::Unitary3 if degree % 2 == 1 => {
                let h = self.hermitian();
                let (_, dims) = finflag::flag_type(&self.mu);
                if dims.len() == 3 {
                    h.fixed_full_flags_odd(&tower, degree)?
                } else {
                    enumerate_flag_points(&tower.field, &self.mu, &all, self.budget)?
                        .into_iter()
                        .filter(|x| h.twisted_frobenius_power(&tower, x, degree) == *x)
                        .collect()
                }
            }
            _ => enumerate_flag_points(&tower.field, &self.mu, &all, self.budget)?,
        };
        let tests = self.test_filtrations(&tower)?;
        Ok(PointSet { tower, points, tests })
    }

    pub fn is_semistable(&self, tower: &FieldTower, tests: &[TestFiltration], x: &FlagPoint) -> SlopeReport {
        let destabilizing: Vec<(usize, Rational)> = tests
            .iter()
            .enumerate()
            .map(|(i, t)| (i, slope(&tower.field, x, &t.filtration).expect("test filtrations share the ambient")))
            .filter(|(_, s)| s.is_negative())
            .collect();
        SlopeReport { semistable: destabilizing.is_empty(), destabilizing }
    }

    /// `#{x ∈ Fl(F_{q_E^m}) : x semistable}`.
    pub fn brute_force_ss_count(&self, m: u32) -> Result<u128> {
        let set = self.points(m)?;
        Ok(set
            .points
            .iter()
            .filter(|x| self.is_semistable(&set.tower, &set.tests, x).semistable)
            .count() as u128)
    }

    /// Filtration of the untwisted `ω̃*_ᾱ` on the standard flag.
    pub fn standard_coweight_filtration(&self, tower: &FieldTower, orbit: usize) -> Result<Filtration> {
        let coweight = &self.data.delta.twisted_coweights[orbit].coords;
        Ok(Filtration::from_flag(&FlagPoint::coordinate(&tower.field, coweight)))
    }

    /// Indices of the points of `Y_I = {x : μ^L(x, ω̃*_ᾱ) < 0 ∀ ᾱ ∉ I}`.
    pub fn y_i_points(&self, set: &PointSet, subset: OrbitSet) -> Result<BTreeSet<usize>> {
        let outside: Vec<usize> = (0..self.data.d_prime()).filter(|&a| !subset.contains(a)).collect();
        let filtrations = outside
            .iter()
            .map(|&a| self.standard_coweight_filtration(&set.tower, a))
            .collect::<Result<Vec<_>>>()?;
        let mut out = BTreeSet::new();
        for (i, x) in set.points.iter().enumerate() {
            let mut inside = true;
            for f in &filtrations {
                if !slope(&set.tower.field, x, f)?.is_negative() {
                    inside = false;
                    break;
                }
            }
            if inside {
                out.insert(i);
            }
        }
        Ok(out)
    }

    fn require_split(&self, what: &str) -> Result<()> {
        match self.kind {
            VerifierKind::SplitSl => Ok(()),
            VerifierKind::Unitary3 => Err(Error::UnsupportedVerifier(format!("{what} is implemented for split SL_n"))),
        }
    }

    /// `B(F_{q^m})·x` by breadth-first search over torus and root-subgroup
    /// generators of the upper triangular Borel.
    pub fn borel_orbit(&self, tower: &FieldTower, x: &FlagPoint) -> HashSet<FlagPoint> {
        let f = &tower.field;
        let n = self.n;
        let identity = || -> Vec<Vec<Elem>> { (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect() };
        let t = f.primitive();
        let mut gens = Vec::new();
        for i in 0..n {
            let mut g = identity();
            g[i][i] = t;
            gens.push(g);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..f.degree() {
                    let mut g = identity();
                    g[i][j] = f.pow(t, k as u64);
                    gens.push(g);
                }
            }
        }
        let mut seen = HashSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = y.transform(f, g);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// Compares `Y_I` with `∪_{w ∈ Ω_I} B w P(μ)/P(μ)` as point sets.
    pub fn bruhat_cells_check(&self, set: &PointSet, subset: OrbitSet) -> Result<CellCheck> {
        self.require_split("the Bruhat cell check")?;
        let index: std::collections::HashMap<&FlagPoint, usize> =
            set.points.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut union = BTreeSet::new();
        let mut cells = Vec::new();
        for o in cohom::omega_i(self.data, subset) {
            let w = &self.data.weyl.elements[self.data.orbits[o].rep];
            let wmu = w.matrix.apply(&self.mu);
            let cell = self.borel_orbit(&set.tower, &FlagPoint::coordinate(&set.tower.field, &wmu));
            cells.push((w.word_label(), w.length, cell.len() as u128));
            for x in &cell {
                let i = index.get(x).ok_or_else(|| Error::Invariant("cell point outside the flag variety".into()))?;
                if !union.insert(*i) {
                    return Err(Error::Invariant("Bruhat cells overlap".into()));
                }
            }
        }
        let y = self.y_i_points(set, subset)?;
        Ok(CellCheck { equal: union == y, y_size: y.len() as u128, cells })
    }

    /// `∪_{ᾱ, g ∈ G(k)} g·Y_{Δ/Γ-{ᾱ}}`, assembled by moving the untwisted
    /// strata with explicit rational matrices.
    pub fn y_cover_points(&self, set: &PointSet) -> Result<BTreeSet<usize>> {
        self.require_split("the translated cover of Y")?;
        let f = &set.tower.field;
        let index: std::collections::HashMap<&FlagPoint, usize> =
            set.points.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut out = BTreeSet::new();
        for a in 0..self.data.d_prime() {
            let subset = OrbitSet::full(self.data.d_prime()).intersection(OrbitSet(!(1 << a)));
            let stratum = self.y_i_points(set, subset)?;
            let d = a + 1;
            for w in enumerate_subspaces(self.n, d, &set.tower.base(), self.budget)? {
                let g = completing_matrix(&w);
                for &i in &stratum {
                    let y = set.points[i].transform(f, &g);
                    out.insert(*index.get(&y).ok_or_else(|| Error::Invariant("translate left Fl".into()))?);
                }
            }
        }
        Ok(out)
    }

    /// `#Fl(F_q)` of each rational parabolic type `P_I`, by enumeration.
    pub fn rational_parabolic_counts(&self) -> Result<Vec<(OrbitSet, u128)>> {
        let d_prime = self.data.d_prime();
        let mut out = Vec::new();
        match self.kind {
            VerifierKind::SplitSl => {
                let tower = FieldTower::new(self.q, 1)?;
                for subset in OrbitSet::all(d_prime) {
                    // P_I stabilizes flags with jumps at the nodes outside I.
                    let mut weight = vec![Rational::zero(); self.n];
                    let mut level = 0i64;
                    for j in (0..self.n).rev() {
                        weight[j] = Rational::from(level);
                        if j > 0 && !subset.contains(j - 1) {
                            level += 1;
                        }
                    }
                    let count = enumerate_flag_points(&tower.field, &weight, &tower.base(), self.budget)?.len();
                    out.push((subset, count as u128));
                }
            }
            VerifierKind::Unitary3 => {
                let tower = FieldTower::new(self.q, 2)?;
                let borels = self.rational_borels(&tower, &self.hermitian())?.len();
                out.push((OrbitSet::EMPTY, borels as u128));
                out.push((OrbitSet::full(1), 1));
            }
        }
        Ok(out)
    }

    /// Enumerated rational parabolic counts agree with `dim i^G_{P_I}(q)`.
    pub fn dims_guard(&self) -> Result<()> {
        for (subset, count) in self.rational_parabolic_counts()? {
            let predicted = cohom::dim_induced(self.data, subset).eval(self.q as i128);
            if predicted != count as i128 {
                return Err(Error::Invariant(format!(
                    "dim i_P for I={:?} predicts {predicted}, enumeration finds {count}",
                    self.data.label_set(subset)
                )));
            }
        }
        Ok(())
    }
}

/// Invertible matrix whose first `dim W` columns span `W`.
pub fn completing_matrix(w: &Subspace) -> Vec<Vec<Elem>> {
    let n = w.ambient();
    let pivots = w.pivots();
    let mut columns: Vec<Vec<Elem>> = w.rows().to_vec();
    columns.extend((0..n).filter(|c| !pivots.contains(c)).map(|c| (0..n).map(|i| (i == c) as Elem).collect()));
    (0..n).map(|i| columns.iter().map(|col| col[i]).collect()).collect()
}

/// Outcome of [`Verifier::bruhat_cells_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub equal: bool,
    pub y_size: u128,
    /// `(word, length, cell size)` for each `w ∈ Ω_I`.
    pub cells: Vec<(String, usize, u128)>,
}
