//! The cohomology formula: `Ω_I`, `I_[w]`, the graded table, its Euler
//! characteristic, dimension polynomials of `i^G_P` and `v^G_P`, and the
//! Lefschetz point-count series.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::galois::{self, DeltaOrbits, GaloisAction, MuClass, WOrbit};
use crate::linalg;
use crate::rootdata::{self, CartanComponent, InnerProduct, LatticeVec, RootDatum};
use crate::weyl::{self, WeylGroup};
use crate::{Error, Rational, Result};

/// A subset of `Δ/Γ`, as a bitmask over orbit indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitSet(pub u32);

impl OrbitSet {
    pub const EMPTY: OrbitSet = OrbitSet(0);

    pub fn full(count: usize) -> Self {
        OrbitSet(((1u64 << count) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        OrbitSet(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        OrbitSet(self.0 | (1 << i))
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Self) -> Self {
        OrbitSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// All subsets of `{0, …, count-1}`.
    pub fn all(count: usize) -> impl Iterator<Item = OrbitSet> {
        (0..1u32 << count).map(OrbitSet)
    }
}

/// A complete problem instance: root datum, invariant form, Galois twist
/// and dominant cocharacter, with everything derived from them.
#[derive(Clone, Debug)]
pub struct GroupDatum {
    pub root: RootDatum,
    pub inner: InnerProduct,
    pub galois: GaloisAction,
    /// Cocharacter as supplied.
    pub mu_input: LatticeVec,
    /// Dominant representative used everywhere downstream.
    pub mu: LatticeVec,
    /// Reflections applied (in order) to reach `mu` from `mu_input`.
    pub dominance_word: Vec<usize>,
    pub weyl: WeylGroup,
    pub stabilizer: Vec<usize>,
    pub kostant: Vec<usize>,
    pub delta: DeltaOrbits,
    pub muclass: MuClass,
    pub orbits: Vec<WOrbit>,
}

/// A Galois twist as a 0-indexed permutation of `Δ` and the order `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub perm: Vec<usize>,
    pub order: usize,
}

impl GroupDatum {
    pub fn new(types: &[CartanComponent], twist: Option<&Twist>, mu: &[i64]) -> Result<Self> {
        let root = rootdata::build_root_datum(types)?;
        let inner = rootdata::inner_product_default(&root);
        Self::with_inner_product(root, inner, twist, mu)
    }

    pub fn with_inner_product(
        root: RootDatum,
        inner: InnerProduct,
        twist: Option<&Twist>,
        mu: &[i64],
    ) -> Result<Self> {
        inner.check(&root)?;
        let galois = match twist {
            Some(t) => galois::build_galois_action(&root, &inner, &t.perm, t.order)?,
            None => galois::split_action(&root, &inner),
        };
        let mu_input = LatticeVec::cocharacter_int(mu);
        let (mu, dominance_word) = root.dominant_representative(&mu_input)?;
        let weyl = weyl::generate_weyl(&root)?;
        let stabilizer = weyl::stabilizer_w_mu(&root, &weyl, &mu)?;
        let kostant = weyl::kostant_reps(&weyl, &stabilizer, &mu)?;
        let delta = galois::delta_orbits(&root, &inner, &galois);
        let muclass = galois::gamma_e(&root, &galois, &mu)?;
        let orbits = galois::worbits(&weyl, &kostant, &galois, &muclass)?;
        Ok(Self {
            root,
            inner,
            galois,
            mu_input,
            mu,
            dominance_word,
            weyl,
            stabilizer,
            kostant,
            delta,
            muclass,
            orbits,
        })
    }

    /// Same instance with the invariant form multiplied by a positive
    /// scalar on each simple factor.
    pub fn rescaled(&self, factors: &[Rational]) -> Result<Self> {
        let inner = self.inner.rescaled(&self.root, factors);
        let twist = (!self.galois.is_split() || self.galois.order > 1).then(|| Twist {
            perm: self.galois.perm.clone(),
            order: self.galois.order,
        });
        let mu: Vec<i64> = self.mu_input.coords.iter().map(|c| c.to_integer()).collect();
        Self::with_inner_product(self.root.clone(), inner, twist.as_ref(), &mu)
    }

    /// `d' = #Δ/Γ`.
    pub fn d_prime(&self) -> usize {
        self.delta.count()
    }

    pub fn is_split(&self) -> bool {
        self.galois.is_split()
    }

    /// `μ` pairs nontrivially with some simple root of every simple factor.
    pub fn mu_is_nondegenerate(&self) -> bool {
        (0..self.root.num_factors()).all(|f| {
            (0..self.root.rank()).any(|i| {
                self.root.factor_of_root[i] == f
                    && !linalg::dot(&self.mu.coords, &self.root.simple_roots[i]).is_zero()
            })
        })
    }

    /// `(w·μ, ω̃*_ᾱ)` for every orbit `ᾱ ∈ Δ/Γ`, i.e. `⟨wμ, ω̃_ᾱ⟩`.
    pub fn orbit_pairings(&self, w: usize) -> Vec<Rational> {
        let wmu = self.weyl.elements[w].matrix.apply(&self.mu.coords);
        self.delta
            .twisted_coweights
            .iter()
            .map(|c| self.inner.inner(&wmu, &c.coords))
            .collect()
    }

    pub fn label_set(&self, set: OrbitSet) -> Vec<String> {
        set.indices().into_iter().map(|o| self.delta.label(o)).collect()
    }
}

/// `P_I` labelled by `I ⊆ Δ/Γ` and the simple roots of its Levi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicLabel {
    pub set: OrbitSet,
    pub simple_roots_in: Vec<usize>,
}

impl ParabolicLabel {
    pub fn new(data: &GroupDatum, set: OrbitSet) -> Self {
        Self { set, simple_roots_in: data.delta.simple_roots_in(&set.indices()) }
    }
}

/// `Ω_I`: orbit indices `[w]` with `⟨wμ, ω̃_ᾱ⟩ > 0` for every `ᾱ ∉ I`.
pub fn omega_i(data: &GroupDatum, subset: OrbitSet) -> Vec<usize> {
    (0..data.orbits.len())
        .filter(|&o| {
            data.orbit_pairings(data.orbits[o].rep)
                .iter()
                .enumerate()
                .all(|(a, p)| subset.contains(a) || p.is_positive())
        })
        .collect()
}

/// `I_[w]`, the least `I` with `[w] ∈ Ω_I`: the orbits `ᾱ` with
/// `⟨wμ, ω̃_ᾱ⟩ ≤ 0`.
pub fn minimal_i(data: &GroupDatum, orbit: usize) -> OrbitSet {
    let set = OrbitSet::from_indices(
        &data
            .orbit_pairings(data.orbits[orbit].rep)
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_positive())
            .map(|(a, _)| a)
            .collect::<Vec<_>>(),
    );
    debug_assert_eq!(
        set,
        OrbitSet::all(data.d_prime())
            .filter(|&i| omega_i(data, i).contains(&orbit))
            .fold(OrbitSet::full(data.d_prime()), OrbitSet::intersection),
        "I_[w] differs from the intersection of all I with [w] ∈ Ω_I"
    );
    set
}

/// Integer polynomial in `q`, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DimPoly {
    pub coeffs: Vec<i64>,
}

impl DimPoly {
    pub fn constant(c: i64) -> Self {
        Self { coeffs: vec![c] }.trimmed()
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        Self { coeffs }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        Self { coeffs: (0..n).map(|i| get(self, i) + get(other, i)).collect() }.trimmed()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }.trimmed()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }.trimmed()
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * q + c as i128)
    }
}

impl fmt::Display for DimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| match (d, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}q"),
                (d, 1) => format!("q^{d}"),
                (d, c) => format!("{c}q^{d}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// `dim i^G_{P_I} = |G(F_q)/P_I(F_q)|` as `Σ q^{l(w)}` over the
/// `σ₀`-fixed minimal representatives of `W/W_I`.
pub fn dim_induced(data: &GroupDatum, subset: OrbitSet) -> DimPoly {
    let label = ParabolicLabel::new(data, subset);
    data.weyl
        .elements
        .iter()
        .enumerate()
        .filter(|(i, _)| data.weyl.is_minimal_in_coset(&data.root, *i, &label.simple_roots_in))
        .filter(|(_, w)| data.galois.conjugate(1, &w.matrix) == w.matrix)
        .fold(DimPoly::default(), |acc, (_, w)| acc.add(&DimPoly::monomial(w.length)))
}

/// `dim v^G_{P_I} = Σ_{I ⊆ J} (-1)^{#(J∖I)} dim i^G_{P_J}`.
pub fn dim_v(data: &GroupDatum, subset: OrbitSet) -> DimPoly {
    OrbitSet::all(data.d_prime())
        .filter(|j| subset.is_subset(*j))
        .fold(DimPoly::default(), |acc, j| {
            let sign = if (j.len() - subset.len()) % 2 == 0 { 1 } else { -1 };
            acc.add(&dim_induced(data, j).scale(sign))
        })
}

/// One term `v^G_{P_{I_[w]}} ⊗ ind_[w](-l)[-2l - #(Δ/Γ - I_[w])]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySummand {
    /// Index into [`GroupDatum::orbits`].
    pub orbit: usize,
    pub i_w: OrbitSet,
    pub degree: usize,
    pub tate_twist: usize,
    pub galois_dim: usize,
    pub dim_v: DimPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub by_degree: BTreeMap<usize, Vec<CohomologySummand>>,
    pub d_prime: usize,
}

pub fn assemble_cohomology(data: &GroupDatum) -> CohomologyTable {
    let d_prime = data.d_prime();
    let mut by_degree: BTreeMap<usize, Vec<CohomologySummand>> = BTreeMap::new();
    let mut dims: BTreeMap<OrbitSet, DimPoly> = BTreeMap::new();
    for (o, orbit) in data.orbits.iter().enumerate() {
        let i_w = minimal_i(data, o);
        let degree = 2 * orbit.length + (d_prime - i_w.len());
        let dim = dims.entry(i_w).or_insert_with(|| dim_v(data, i_w)).clone();
        by_degree.entry(degree).or_default().push(CohomologySummand {
            orbit: o,
            i_w,
            degree,
            tate_twist: orbit.length,
            galois_dim: orbit.size,
            dim_v: dim,
        });
    }
    CohomologyTable { by_degree, d_prime }
}

impl CohomologyTable {
    pub fn summands(&self) -> impl Iterator<Item = &CohomologySummand> {
        self.by_degree.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.summands().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `H^i = 0` for `i < d'` and `H^{d'}` is a single `v^G_B` with trivial
    /// twist and trivial Galois part.
    pub fn has_vanishing_shape(&self) -> bool {
        let below_empty = self.by_degree.keys().all(|&d| d >= self.d_prime);
        let bottom = self.by_degree.get(&self.d_prime).map(Vec::as_slice);
        below_empty
            && matches!(bottom, Some([s]) if s.i_w.is_empty() && s.tate_twist == 0 && s.galois_dim == 1)
    }

    pub fn to_json(&self, data: &GroupDatum) -> TableJson {
        TableJson {
            d_prime: self.d_prime,
            summands: self
                .summands()
                .map(|s| SummandJson {
                    degree: s.degree,
                    twist: s.tate_twist,
                    orbit_size: s.galois_dim,
                    i: data.label_set(s.i_w),
                    dim_v: s.dim_v.clone(),
                })
                .collect(),
        }
    }

    /// One line per summand, for terminal output.
    pub fn render(&self, data: &GroupDatum) -> String {
        let mut out = String::new();
        for s in self.summands() {
            let rep = data.weyl.elements[data.orbits[s.orbit].rep].word_label();
            let labels = data.label_set(s.i_w);
            out.push_str(&format!(
                "H^{:<3} [{}] I={{{}}} v_P ⊗ ind(f={})(-{})  dim v = {}\n",
                s.degree,
                rep,
                labels.join(","),
                s.galois_dim,
                s.tate_twist,
                s.dim_v
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableJson {
    pub d_prime: usize,
    pub summands: Vec<SummandJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandJson {
    pub degree: usize,
    pub twist: usize,
    pub orbit_size: usize,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    pub dim_v: DimPoly,
}

/// Key of a virtual summand `v^G_{P_I} ⊗ ind(f)(-l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerTerm {
    pub i: OrbitSet,
    pub twist: usize,
    pub orbit_size: usize,
}

/// A formal integer combination of [`EulerTerm`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EulerCharacteristic {
    pub terms: BTreeMap<EulerTerm, i64>,
}

impl EulerCharacteristic {
    fn add(&mut self, term: EulerTerm, coeff: i64) {
        let c = self.terms.entry(term).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&term);
        }
    }

    pub fn render(&self, data: &GroupDatum) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let module = if t.i.len() == data.d_prime() {
                    "triv".to_string()
                } else {
                    format!("v_P{{{}}}", data.label_set(t.i).join(","))
                };
                let galois = if t.orbit_size > 1 { format!("⊗ind{}", t.orbit_size) } else { String::new() };
                format!("{c:+}[{module}{galois}(-{})]", t.twist)
            })
            .collect();
        parts.join(" ")
    }
}

/// Alternating sum of the table, `Σ_i (-1)^i [H^i]`.
pub fn euler_characteristic(table: &CohomologyTable) -> EulerCharacteristic {
    let mut chi = EulerCharacteristic::default();
    for s in table.summands() {
        let sign = if s.degree % 2 == 0 { 1 } else { -1 };
        chi.add(EulerTerm { i: s.i_w, twist: s.tate_twist, orbit_size: s.galois_dim }, sign);
    }
    chi
}

/// `Σ_[w] (-1)^{d' - #I_[w]} v^G_{P_{I_[w]}} ⊗ ind_[w](-l([w]))`, straight
/// from the orbits.
pub fn euler_formula(data: &GroupDatum) -> EulerCharacteristic {
    let mut chi = EulerCharacteristic::default();
    for (o, orbit) in data.orbits.iter().enumerate() {
        let i_w = minimal_i(data, o);
        let sign = if (data.d_prime() - i_w.len()) % 2 == 0 { 1 } else { -1 };
        chi.add(EulerTerm { i: i_w, twist: orbit.length, orbit_size: orbit.size }, sign);
    }
    chi
}

/// Trace of the `m`-th power of a generator of cyclic `Γ_E` on the
/// permutation module of an orbit of size `f`.
pub fn orbit_trace(f: usize, m: u32) -> i128 {
    if m as usize % f == 0 {
        f as i128
    } else {
        0
    }
}

/// Predicted `|F^ss(F_{q_E^m})|`, with `q_E = q^{[E:k]}`.
pub fn lefschetz_series(table: &CohomologyTable, data: &GroupDatum, q: u64, m: u32) -> Result<i128> {
    let overflow = || Error::Invariant("Lefschetz series overflows i128".into());
    let q = q as i128;
    let q_e = q.checked_pow(data.muclass.e_degree as u32).ok_or_else(overflow)?;
    let mut total = 0i128;
    for s in table.summands() {
        let sign = if s.degree % 2 == 0 { 1 } else { -1 };
        let frob = q_e
            .checked_pow(m * s.tate_twist as u32)
            .ok_or_else(overflow)?;
        let term = s
            .dim_v
            .eval(q)
            .checked_mul(orbit_trace(s.galois_dim, m))
            .and_then(|x| x.checked_mul(frob))
            .ok_or_else(overflow)?;
        total += sign * term;
    }
    Ok(total)
}

/// The split-case formula `⊕_{w ∈ W^μ} v_{P_{I_w}}(-l(w))[-2l(w) - #(Δ - I_w)]`
/// evaluated element by element with the plain fundamental weights,
/// bypassing orbits and averaged coweights. Entries are
/// `(degree, I_w as simple-root indices, twist)`, sorted.
pub fn split_formula_entries(data: &GroupDatum) -> Vec<(usize, Vec<usize>, usize)> {
    let weights = data.root.fundamental_weights();
    let rank = data.root.rank();
    let mut out: Vec<(usize, Vec<usize>, usize)> = data
        .kostant
        .iter()
        .map(|&w| {
            let e = &data.weyl.elements[w];
            let wmu = e.act(&data.root, &data.mu);
            let i_w: Vec<usize> = (0..rank)
                .filter(|&a| !data.root.pairing(&wmu, &weights[a]).unwrap().is_positive())
                .collect();
            (2 * e.length + rank - i_w.len(), i_w, e.length)
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn a(n: usize) -> Vec<CartanComponent> {
        vec![CartanComponent::new(Family::A, n)]
    }

    fn unitary() -> Twist {
        Twist { perm: vec![1, 0], order: 2 }
    }

    fn degrees(table: &CohomologyTable) -> Vec<(usize, usize, usize, usize)> {
        table
            .summands()
            .map(|s| (s.degree, s.i_w.0 as usize, s.tate_twist, s.galois_dim))
            .collect()
    }

    #[test]
    fn omega_examples() {
        let sl2 = GroupDatum::new(&a(1), None, &[1, -1]).unwrap();
        assert_eq!(omega_i(&sl2, OrbitSet::EMPTY), vec![0]);
        let u3 = GroupDatum::new(&a(2), Some(&unitary()), &[1, 0, -1]).unwrap();
        assert_eq!(omega_i(&u3, OrbitSet::full(1)), vec![0, 1, 2, 3]);
        let words: Vec<_> = omega_i(&u3, OrbitSet::EMPTY)
            .iter()
            .map(|&o| u3.weyl.elements[u3.orbits[o].rep].word.clone())
            .collect();
        assert_eq!(words, vec![vec![], vec![0]]);
    }

    #[test]
    fn minimal_i_examples() {
        let sl3 = GroupDatum::new(&a(2), None, &[1, 0, -1]).unwrap();
        assert_eq!(minimal_i(&sl3, 0), OrbitSet::EMPTY);
        // s1 μ = (0, 1, -1): pairing with ω̃*_1 is exactly zero.
        assert_eq!(sl3.orbit_pairings(sl3.orbits[1].rep)[0], Rational::zero());
        assert_eq!(minimal_i(&sl3, 1), OrbitSet::from_indices(&[0]));
        let central = GroupDatum::new(&a(2), None, &[0, 0, 0]).unwrap();
        assert_eq!(minimal_i(&central, 0), OrbitSet::full(2));
    }

    #[test]
    fn assemble_examples() {
        let sl2 = GroupDatum::new(&a(1), None, &[1, -1]).unwrap();
        assert_eq!(degrees(&assemble_cohomology(&sl2)), vec![(1, 0, 0, 1), (2, 1, 1, 1)]);

        let sl3 = GroupDatum::new(&a(2), None, &[2, -1, -1]).unwrap();
        assert_eq!(
            degrees(&assemble_cohomology(&sl3)),
            vec![(2, 0, 0, 1), (3, 1, 1, 1), (4, 3, 2, 1)]
        );

        let central = GroupDatum::new(&a(2), None, &[0, 0, 0]).unwrap();
        assert_eq!(degrees(&assemble_cohomology(&central)), vec![(0, 3, 0, 1)]);

        let u3 = GroupDatum::new(&a(2), Some(&unitary()), &[1, 0, -1]).unwrap();
        let table = assemble_cohomology(&u3);
        assert_eq!(
            degrees(&table),
            vec![(1, 0, 0, 1), (3, 0, 1, 2), (4, 1, 2, 2), (6, 1, 3, 1)]
        );
        assert!(table.has_vanishing_shape());
    }

    #[test]
    fn euler_examples() {
        let sl2 = GroupDatum::new(&a(1), None, &[1, -1]).unwrap();
        let chi = euler_characteristic(&assemble_cohomology(&sl2));
        let expect = BTreeMap::from([
            (EulerTerm { i: OrbitSet(0), twist: 0, orbit_size: 1 }, -1),
            (EulerTerm { i: OrbitSet(1), twist: 1, orbit_size: 1 }, 1),
        ]);
        assert_eq!(chi.terms, expect);

        let central = GroupDatum::new(&a(2), None, &[0, 0, 0]).unwrap();
        let chi = euler_characteristic(&assemble_cohomology(&central));
        assert_eq!(
            chi.terms,
            BTreeMap::from([(EulerTerm { i: OrbitSet(3), twist: 0, orbit_size: 1 }, 1)])
        );

        let sl3 = GroupDatum::new(&a(2), None, &[1, 0, -1]).unwrap();
        let chi = euler_characteristic(&assemble_cohomology(&sl3));
        let expect = BTreeMap::from([
            (EulerTerm { i: OrbitSet(0), twist: 0, orbit_size: 1 }, 1),
            (EulerTerm { i: OrbitSet(1), twist: 1, orbit_size: 1 }, -1),
            (EulerTerm { i: OrbitSet(2), twist: 1, orbit_size: 1 }, -1),
            (EulerTerm { i: OrbitSet(3), twist: 2, orbit_size: 1 }, 2),
            (EulerTerm { i: OrbitSet(3), twist: 3, orbit_size: 1 }, 1),
        ]);
        assert_eq!(chi.terms, expect);
        assert_eq!(chi, euler_formula(&sl3));
    }

    #[test]
    fn dim_induced_examples() {
        let sl2 = GroupDatum::new(&a(1), None, &[1, -1]).unwrap();
        assert_eq!(dim_induced(&sl2, OrbitSet::EMPTY).coeffs, vec![1, 1]);
        let sl3 = GroupDatum::new(&a(2), None, &[1, 0, -1]).unwrap();
        // (q+1)(q²+q+1) = q³ + 2q² + 2q + 1
        assert_eq!(dim_induced(&sl3, OrbitSet::EMPTY).coeffs, vec![1, 2, 2, 1]);
        assert_eq!(dim_induced(&sl3, OrbitSet::from_indices(&[0])).coeffs, vec![1, 1, 1]);
        let u3 = GroupDatum::new(&a(2), Some(&unitary()), &[1, 0, -1]).unwrap();
        // Borel-rational flags of U_3: isotropic points of the Hermitian curve.
        assert_eq!(dim_induced(&u3, OrbitSet::EMPTY).coeffs, vec![1, 0, 0, 1]);
    }

    #[test]
    fn dim_v_examples() {
        let sl3 = GroupDatum::new(&a(2), None, &[1, 0, -1]).unwrap();
        assert_eq!(dim_v(&sl3, OrbitSet::full(2)), DimPoly::constant(1));
        assert_eq!(dim_v(&sl3, OrbitSet::EMPTY), DimPoly::monomial(3));
        assert_eq!(dim_v(&sl3, OrbitSet::from_indices(&[0])).coeffs, vec![0, 1, 1]);
        let u3 = GroupDatum::new(&a(2), Some(&unitary()), &[1, 0, -1]).unwrap();
        assert_eq!(dim_v(&u3, OrbitSet::EMPTY), DimPoly::monomial(3));
    }

    #[test]
    fn lefschetz_examples() {
        let sl2 = GroupDatum::new(&a(1), None, &[1, -1]).unwrap();
        let t = assemble_cohomology(&sl2);
        assert_eq!(lefschetz_series(&t, &sl2, 2, 2).unwrap(), 2);

        let sl3 = GroupDatum::new(&a(2), None, &[2, -1, -1]).unwrap();
        let t = assemble_cohomology(&sl3);
        for q in [2i128, 3, 4, 5] {
            for m in 1..=4u32 {
                let expect = q.pow(2 * m) - (q * q + q) * q.pow(m) + q.pow(3);
                assert_eq!(lefschetz_series(&t, &sl3, q as u64, m).unwrap(), expect);
            }
        }

        let u3 = GroupDatum::new(&a(2), Some(&unitary()), &[1, 0, -1]).unwrap();
        let t = assemble_cohomology(&u3);
        for m in [1u32, 3, 5] {
            assert_eq!(lefschetz_series(&t, &u3, 2, m).unwrap(), 2i128.pow(3 * m) - 8);
        }
        assert_eq!(lefschetz_series(&t, &u3, 2, 2).unwrap(), 24);
    }

    #[test]
    fn dim_poly_display() {
        assert_eq!(DimPoly { coeffs: vec![1, 2, 0, 1] }.to_string(), "q^3 + 2q + 1");
        assert_eq!(DimPoly { coeffs: vec![-1, 1] }.to_string(), "q - 1");
        assert_eq!(DimPoly::default().to_string(), "0");
    }
}
