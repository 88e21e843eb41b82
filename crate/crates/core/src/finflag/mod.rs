//! Linear algebra over finite fields: field towers, subspaces, weighted
//! flags, Frobenius maps and the Hermitian structure of quasi-split `U_3`.

mod field;
mod subspace;

pub use field::{prime_power, Elem, Field, FieldTower, MAX_FIELD_SIZE};
pub use subspace::{enumerate_subspaces, gaussian_binomial, nullspace, rref, Subspace, ENUMERATION_BUDGET};

use crate::{Error, Rational, Result};

/// A point of `G/P(μ)` for `G = SL_n`: the filtration `F^a = ⊕_{μ_j ≥ a}`
/// moved by some `g`, recorded as a chain with its weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagPoint {
    /// Distinct weights, strictly decreasing.
    pub weights: Vec<Rational>,
    /// `chain[i] = F^{weights[i]}`; strictly increasing, ending at `F^n`.
    pub chain: Vec<Subspace>,
}

/// Distinct weights of `mu` (decreasing) and the cumulative dimensions
/// `#{j : μ_j ≥ a}`.
pub fn flag_type(mu: &[Rational]) -> (Vec<Rational>, Vec<usize>) {
    let mut weights = mu.to_vec();
    weights.sort_by(|a, b| b.cmp(a));
    weights.dedup();
    let dims = weights.iter().map(|w| mu.iter().filter(|x| *x >= w).count()).collect();
    (weights, dims)
}

impl FlagPoint {
    pub fn ambient(&self) -> usize {
        self.chain.last().map_or(0, Subspace::ambient)
    }

    /// The `T`-fixed point `F^a = span{e_j : v_j ≥ a}` for a weight vector `v`.
    pub fn coordinate(field: &Field, v: &[Rational]) -> Self {
        let n = v.len();
        let (weights, _) = flag_type(v);
        let chain = weights
            .iter()
            .map(|w| {
                let basis = (0..n)
                    .filter(|&j| v[j] >= *w)
                    .map(|j| (0..n).map(|i| (i == j) as Elem).collect())
                    .collect();
                Subspace::span(field, n, basis)
            })
            .collect();
        Self { weights, chain }
    }

    pub fn map_entries(&self, field: &Field, f: impl Fn(Elem) -> Elem + Copy) -> Self {
        Self {
            weights: self.weights.clone(),
            chain: self.chain.iter().map(|s| s.map_entries(field, f)).collect(),
        }
    }

    pub fn transform(&self, field: &Field, g: &[Vec<Elem>]) -> Self {
        Self {
            weights: self.weights.clone(),
            chain: self.chain.iter().map(|s| s.transform(field, g)).collect(),
        }
    }

    pub fn check(&self, field: &Field) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidFiltration(why.to_string()));
        if self.weights.len() != self.chain.len() || self.chain.is_empty() {
            return bad("weights and chain lengths differ");
        }
        if self.weights.windows(2).any(|w| w[0] <= w[1]) {
            return bad("weights are not strictly decreasing");
        }
        if self.chain.last().unwrap().dim() != self.ambient() {
            return bad("chain does not end at the ambient space");
        }
        for pair in self.chain.windows(2) {
            if pair[0].dim() >= pair[1].dim() || !pair[0].is_subspace_of(field, &pair[1]) {
                return bad("chain is not strictly increasing");
            }
        }
        Ok(())
    }
}

/// `[n; d_1, d_2 - d_1, …]_s`, the number of flags with the given dimensions.
pub fn flag_count(n: usize, dims: &[usize], s: u128) -> u128 {
    let mut prev = 0;
    let mut total = 1u128;
    for &d in dims {
        total = total.saturating_mul(gaussian_binomial(n - prev, d - prev, s));
        prev = d;
    }
    total
}

/// All flags of the type of `mu` whose subspaces are defined over the
/// subfield `entries` of `field`.
pub fn enumerate_flag_points(
    field: &Field,
    mu: &[Rational],
    entries: &[Elem],
    budget: u128,
) -> Result<Vec<FlagPoint>> {
    let n = mu.len();
    let (weights, dims) = flag_type(mu);
    let needed = flag_count(n, &dims, entries.len() as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: format!("flags of type {dims:?} in F^{n}"), needed, budget });
    }
    let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
    let mut prev = 0;
    for &d in &dims {
        let mut next = Vec::new();
        for chain in partial {
            let base = chain.last().cloned().unwrap_or_else(|| Subspace::zero(n));
            let pivots = base.pivots();
            let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
            for u in enumerate_subspaces(free.len(), d - prev, entries, budget)? {
                let mut rows = base.rows().to_vec();
                rows.extend(u.rows().iter().map(|r| {
                    let mut v = vec![0; n];
                    for (&c, &x) in free.iter().zip(r) {
                        v[c] = x;
                    }
                    v
                }));
                let mut c = chain.clone();
                c.push(Subspace::span(field, n, rows));
                next.push(c);
            }
        }
        partial = next;
        prev = d;
    }
    Ok(partial
        .into_iter()
        .map(|chain| FlagPoint { weights: weights.clone(), chain })
        .collect())
}

/// `x ↦ x^q` on every coordinate.
pub fn frobenius(tower: &FieldTower, x: &FlagPoint) -> FlagPoint {
    x.map_entries(&tower.field, |a| tower.frobenius(a))
}

/// A subspace is `F_q`-rational iff its echelon basis lies over `F_q`.
pub fn is_k_rational(sub: &Subspace, tower: &FieldTower) -> bool {
    sub.entries_in(|a| tower.is_in_base(a))
}

/// Quasi-split `U_n` for the antidiagonal Hermitian form
/// `h(v, w) = Σ v_i w̄_{n-1-i}` over `F_{q²}`, where `w̄ = w^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianData {
    pub n: usize,
    pub q: u64,
}

impl HermitianData {
    pub fn new(n: usize, q: u64) -> Self {
        Self { n, q }
    }

    /// Form matrix `J` with ones on the antidiagonal.
    pub fn form(&self) -> Vec<Vec<Elem>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (i + j + 1 == self.n) as Elem).collect())
            .collect()
    }

    /// Twisted Frobenius: conjugate, then replace `F^a` by the orthogonal of
    /// `F^{>-a}`. A chain `V_1 ⊂ … ⊂ V_r` with weights `w_i` goes to
    /// `V_{r-1}^⊥ ⊂ … ⊂ V_0^⊥` with weights `-w_r > … > -w_1`.
    pub fn twisted_frobenius(&self, tower: &FieldTower, x: &FlagPoint) -> FlagPoint {
        let f = &tower.field;
        let conj = frobenius(tower, x);
        let r = conj.chain.len();
        let chain = (0..r)
            .map(|i| {
                if i + 1 == r {
                    Subspace::full(self.n)
                } else {
                    conj.chain[r - 2 - i].antidiagonal_perp(f)
                }
            })
            .collect();
        let weights = conj.weights.iter().rev().map(|w| -w).collect();
        FlagPoint { weights, chain }
    }

    pub fn twisted_frobenius_power(&self, tower: &FieldTower, x: &FlagPoint, k: u32) -> FlagPoint {
        (0..k).fold(x.clone(), |y, _| self.twisted_frobenius(tower, &y))
    }

    /// Full flags `L ⊂ P` over the ambient field with `F^k x = x`, for odd
    /// `k`: exactly the `L` with `L ⊂ P := (L^{(q^k)})^⊥`.
    pub fn fixed_full_flags_odd(&self, tower: &FieldTower, k: u32) -> Result<Vec<FlagPoint>> {
        assert!(self.n == 3 && k % 2 == 1, "odd twisted powers are implemented for U_3");
        let f = &tower.field;
        let all: Vec<Elem> = f.elements().collect();
        let weights = vec![Rational::from(1), Rational::from(0), Rational::from(-1)];
        let mut out = Vec::new();
        for line in enumerate_subspaces(3, 1, &all, ENUMERATION_BUDGET)? {
            let plane = line.map_entries(f, |a| tower.frobenius_power(a, k)).antidiagonal_perp(f);
            if line.is_subspace_of(f, &plane) {
                out.push(FlagPoint { weights: weights.clone(), chain: vec![line, plane, Subspace::full(3)] });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn flag_counts() {
        let t = FieldTower::new(2, 1).unwrap();
        let all: Vec<_> = t.field.elements().collect();
        let full = enumerate_flag_points(&t.field, &r(&[1, 0, -1]), &all, 1000).unwrap();
        assert_eq!(full.len(), 21);
        let p2 = enumerate_flag_points(&t.field, &r(&[2, -1, -1]), &all, 1000).unwrap();
        assert_eq!(p2.len(), 7);
        let t4 = FieldTower::new(4, 1).unwrap();
        let all4: Vec<_> = t4.field.elements().collect();
        assert_eq!(enumerate_flag_points(&t4.field, &r(&[1, -1]), &all4, 1000).unwrap().len(), 5);
        for x in &full {
            x.check(&t.field).unwrap();
        }
    }

    #[test]
    fn flag_count_matches_closed_form() {
        let t = FieldTower::new(3, 2).unwrap();
        let all: Vec<_> = t.field.elements().collect();
        for mu in [vec![1, 0, -1], vec![1, 1, -2], vec![3, 1, -1, -3], vec![1, 1, -1, -1]] {
            let mu = r(&mu);
            let (_, dims) = flag_type(&mu);
            let got = enumerate_flag_points(&t.field, &mu, &t.base(), 10_000).unwrap().len();
            assert_eq!(got as u128, flag_count(mu.len(), &dims, 3));
            if mu.len() == 3 {
                let big = enumerate_flag_points(&t.field, &mu, &all, 100_000).unwrap().len();
                assert_eq!(big as u128, flag_count(3, &dims, 9));
            }
        }
        assert!(enumerate_flag_points(&t.field, &r(&[1, 0, -1]), &all, 10).is_err());
    }

    #[test]
    fn rationality() {
        let t = FieldTower::new(2, 2).unwrap();
        let e1 = Subspace::span(&t.field, 3, vec![vec![1, 0, 0]]);
        assert!(is_k_rational(&e1, &t));
        let g = t.field.primitive();
        let line = Subspace::span(&t.field, 2, vec![vec![1, g]]);
        assert!(!is_k_rational(&line, &t));
        let rational = t
            .field
            .elements()
            .flat_map(|a| t.field.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| (a, b) != (0, 0))
            .map(|(a, b)| Subspace::span(&t.field, 2, vec![vec![a, b]]))
            .filter(|s| is_k_rational(s, &t))
            .collect::<std::collections::HashSet<_>>();
        assert_eq!(rational.len(), 3);
    }

    #[test]
    fn frobenius_cycles_divide_m() {
        let t = FieldTower::new(2, 3).unwrap();
        let all: Vec<_> = t.field.elements().collect();
        for x in enumerate_flag_points(&t.field, &r(&[1, 0, -1]), &all, 10_000).unwrap() {
            let y = (0..3).fold(x.clone(), |y, _| frobenius(&t, &y));
            assert_eq!(y, x);
            let rational = x.chain.iter().all(|s| is_k_rational(s, &t));
            assert_eq!(rational, frobenius(&t, &x) == x);
        }
    }

    #[test]
    fn hermitian_twist() {
        let h = HermitianData::new(3, 2);
        let form = h.form();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(form[i][j], form[j][i]);
            }
        }
        let t = FieldTower::new(2, 2).unwrap();
        let all: Vec<_> = t.field.elements().collect();
        let flags = enumerate_flag_points(&t.field, &r(&[1, 0, -1]), &all, 1000).unwrap();
        let fixed: Vec<_> = flags.iter().filter(|x| h.twisted_frobenius(&t, x) == **x).collect();
        assert_eq!(fixed.len(), 9);
        assert_eq!(h.fixed_full_flags_odd(&t, 1).unwrap().len(), 9);
        for x in &flags {
            assert_eq!(h.twisted_frobenius_power(&t, x, 2), *x);
        }
        let t4 = FieldTower::new(2, 4).unwrap();
        let all4: Vec<_> = t4.field.elements().collect();
        for x in enumerate_flag_points(&t4.field, &r(&[2, -1, -1]), &all4, 1000).unwrap() {
            let twice = h.twisted_frobenius_power(&t4, &x, 2);
            let frob2 = x.map_entries(&t4.field, |a| t4.frobenius_power(a, 2));
            assert_eq!(twice, frob2);
        }
    }
}
