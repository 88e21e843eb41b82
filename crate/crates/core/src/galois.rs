//! The quasi-split Galois twist: a cyclic group `Γ` generated by one
//! diagram automorphism, its orbits on the simple roots, the averaged
//! coweights `ω̃*`, the stabilizer `Γ_E` of `μ` and the `Γ_E`-orbits on
//! Kostant representatives.

use std::collections::BTreeSet;

use crate::linalg::RatMatrix;
use crate::rootdata::{InnerProduct, LatticeVec, RootDatum};
use crate::weyl::WeylGroup;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug)]
pub struct GaloisAction {
    /// Image of each simple root under the generator `σ₀` (0-indexed).
    pub perm: Vec<usize>,
    /// `e = |Γ|`.
    pub order: usize,
    /// Matrix of `σ₀` on the cocharacter space.
    pub matrix: RatMatrix,
    /// `σ₀^k` for `k = 0..e`.
    powers: Vec<RatMatrix>,
}

/// The split case: trivial permutation, `e = 1`.
pub fn split_action(datum: &RootDatum, ip: &InnerProduct) -> GaloisAction {
    build_galois_action(datum, ip, &(0..datum.rank()).collect::<Vec<_>>(), 1)
        .expect("identity twist is always valid")
}

pub fn build_galois_action(
    datum: &RootDatum,
    ip: &InnerProduct,
    perm: &[usize],
    order: usize,
) -> Result<GaloisAction> {
    let rank = datum.rank();
    if perm.len() != rank {
        return Err(Error::InvalidTwist(format!(
            "permutation has {} entries, the datum has rank {rank}",
            perm.len()
        )));
    }
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    if distinct.len() != rank || perm.iter().any(|&p| p >= rank) {
        return Err(Error::InvalidTwist("images do not form a permutation".into()));
    }
    for i in 0..rank {
        for j in 0..rank {
            if datum.cartan_matrix[perm[i]][perm[j]] != datum.cartan_matrix[i][j] {
                return Err(Error::InvalidTwist(format!(
                    "permutation does not preserve the Cartan matrix at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let perm_order = permutation_order(perm);
    if order == 0 || order % perm_order != 0 {
        return Err(Error::InvalidTwist(format!(
            "order {order} is not a positive multiple of the permutation order {perm_order}"
        )));
    }

    // Basis: simple coroots followed by a basis of their orthogonal complement.
    let complement = RatMatrix::from_rows(
        &datum
            .simple_coroots
            .iter()
            .map(|c| ip.gram.apply(c))
            .collect::<Vec<_>>(),
    )
    .nullspace();
    let source: Vec<Vec<Rational>> = datum
        .simple_coroots
        .iter()
        .cloned()
        .chain(complement.iter().cloned())
        .collect();
    let target: Vec<Vec<Rational>> = perm
        .iter()
        .map(|&p| datum.simple_coroots[p].clone())
        .chain(complement.iter().cloned())
        .collect();
    let source_inv = RatMatrix::from_columns(&source)
        .inverse()
        .ok_or_else(|| Error::Invariant("coroots and complement do not span".into()))?;
    let matrix = RatMatrix::from_columns(&target).mul(&source_inv);

    if matrix.transpose().mul(&ip.gram).mul(&matrix) != ip.gram {
        return Err(Error::InvalidTwist(
            "twist is not an isometry of the inner product".into(),
        ));
    }
    let mut powers = vec![RatMatrix::identity(datum.ambient_dim)];
    for k in 1..=order {
        let next = powers[k - 1].mul(&matrix);
        powers.push(next);
    }
    if !powers[order].is_identity() {
        return Err(Error::Invariant("σ₀^e is not the identity".into()));
    }
    powers.truncate(order);
    let action = GaloisAction { perm: perm.to_vec(), order, matrix, powers };
    if !datum
        .fundamental_coweights(ip)
        .iter()
        .all(|w| datum.is_dominant(&action.apply(0, w)) || w.is_zero())
    {
        return Err(Error::Invariant("twist does not preserve the dominant chamber".into()));
    }
    Ok(action)
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut order = 1;
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

impl GaloisAction {
    pub fn is_split(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `σ₀^k`.
    pub fn power(&self, k: usize) -> &RatMatrix {
        &self.powers[k % self.order]
    }

    /// `σ₀^k · v` for a cocharacter `v`.
    pub fn apply(&self, k: usize, v: &LatticeVec) -> LatticeVec {
        LatticeVec::cocharacter(self.power(k).apply(&v.coords))
    }

    /// `σ₀^k w σ₀^{-k}` as a matrix.
    pub fn conjugate(&self, k: usize, w: &RatMatrix) -> RatMatrix {
        let inv = self.power(self.order - k % self.order);
        self.power(k).mul(w).mul(inv)
    }
}

/// The partition `Δ/Γ` with one averaged coweight per orbit.
#[derive(Clone, Debug)]
pub struct DeltaOrbits {
    /// Orbits of simple-root indices, each sorted, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// `ω̃*_ᾱ = Σ_{σ∈Γ} σ ω*_α`, one per orbit.
    pub twisted_coweights: Vec<LatticeVec>,
    pub orbit_of_root: Vec<usize>,
}

impl DeltaOrbits {
    /// `d' = #Δ/Γ`.
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Label `a<k>` with `k` the least 1-indexed simple root of the orbit.
    pub fn label(&self, orbit: usize) -> String {
        format!("a{}", self.orbits[orbit][0] + 1)
    }

    /// Simple roots belonging to the given orbits.
    pub fn simple_roots_in(&self, subset: &[usize]) -> Vec<usize> {
        let mut roots: Vec<usize> = subset
            .iter()
            .flat_map(|&o| self.orbits[o].iter().copied())
            .collect();
        roots.sort_unstable();
        roots
    }
}

pub fn delta_orbits(datum: &RootDatum, ip: &InnerProduct, action: &GaloisAction) -> DeltaOrbits {
    let rank = datum.rank();
    let mut orbit_of_root = vec![usize::MAX; rank];
    let mut orbits = Vec::new();
    for start in 0..rank {
        if orbit_of_root[start] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while orbit_of_root[i] == usize::MAX {
            orbit_of_root[i] = orbits.len();
            orbit.push(i);
            i = action.perm[i];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let coweights = datum.fundamental_coweights(ip);
    let twisted_coweights = orbits
        .iter()
        .map(|orbit| {
            let base = &coweights[orbit[0]];
            (1..action.order).fold(base.clone(), |acc, k| acc.plus(&action.apply(k, base)))
        })
        .collect();
    DeltaOrbits { orbits, twisted_coweights, orbit_of_root }
}

/// `μ` together with its Galois stabilizer `Γ_E = ⟨σ₀^t⟩`.
#[derive(Clone, Debug)]
pub struct MuClass {
    pub mu: LatticeVec,
    /// Least `t > 0` with `σ₀^t μ = μ`; equals `[E:k]`.
    pub e_degree: usize,
    /// `|Γ_E| = e / t`.
    pub gamma_e_order: usize,
}

impl MuClass {
    /// Power of `σ₀` generating `Γ_E`.
    pub fn generator_power(&self) -> usize {
        self.e_degree
    }
}

pub fn gamma_e(datum: &RootDatum, action: &GaloisAction, mu: &LatticeVec) -> Result<MuClass> {
    datum.expect_dim(mu)?;
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let t = (1..=action.order)
        .find(|&t| action.apply(t, mu) == *mu)
        .expect("σ₀^e is the identity");
    Ok(MuClass {
        mu: mu.clone(),
        e_degree: t,
        gamma_e_order: action.order / t,
    })
}

/// A `Γ_E`-orbit `[w]` in `W^μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WOrbit {
    /// Member with the lexicographically least reduced word.
    pub rep: usize,
    /// Members in the order visited by the generator of `Γ_E`.
    pub members: Vec<usize>,
    /// `f = [Γ_E : Stab(w)]`.
    pub size: usize,
    pub length: usize,
}

/// Orbits of `W^μ` under conjugation by `Γ_E`.
pub fn worbits(
    group: &WeylGroup,
    kostant: &[usize],
    action: &GaloisAction,
    muclass: &MuClass,
) -> Result<Vec<WOrbit>> {
    let in_reps: BTreeSet<usize> = kostant.iter().copied().collect();
    let t = muclass.generator_power();
    let mut assigned = BTreeSet::new();
    let mut orbits = Vec::new();
    for &start in kostant {
        if assigned.contains(&start) {
            continue;
        }
        let mut members = vec![start];
        let mut current = start;
        loop {
            let image = action.conjugate(t, &group.elements[current].matrix);
            let next = group
                .find(&image)
                .ok_or_else(|| Error::Invariant("conjugate left the Weyl group".into()))?;
            if !in_reps.contains(&next) {
                return Err(Error::Invariant(format!(
                    "Γ_E-conjugate of {} escapes W^μ",
                    group.elements[current].word_label()
                )));
            }
            if next == start {
                break;
            }
            members.push(next);
            current = next;
        }
        let length = group.elements[start].length;
        if members.iter().any(|&m| group.elements[m].length != length) {
            return Err(Error::Invariant("orbit members differ in length".into()));
        }
        if muclass.gamma_e_order % members.len() != 0 {
            return Err(Error::Invariant("orbit size does not divide |Γ_E|".into()));
        }
        assigned.extend(members.iter().copied());
        orbits.push(WOrbit {
            rep: *members.iter().min().unwrap(),
            size: members.len(),
            members,
            length,
        });
    }
    orbits.sort_by_key(|o| o.rep);
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, inner_product_default, CartanComponent, Family};
    use crate::weyl::{generate_weyl, kostant_reps, stabilizer_w_mu};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn a(n: usize) -> (RootDatum, InnerProduct) {
        let d = build_root_datum(&[CartanComponent::new(Family::A, n)]).unwrap();
        let ip = inner_product_default(&d);
        (d, ip)
    }

    #[test]
    fn unitary_twist_matrix_on_sum_zero_vectors() {
        let (d, ip) = a(2);
        let s = build_galois_action(&d, &ip, &[1, 0], 2).unwrap();
        for v in [[1, 0, -1], [2, -1, -1], [0, 3, -3], [5, -7, 2]] {
            let image = s.apply(1, &LatticeVec::cocharacter_int(&v));
            assert_eq!(image.coords, vec![q(-v[2]), q(-v[1]), q(-v[0])]);
        }
        // The center is fixed.
        let center = LatticeVec::cocharacter_int(&[1, 1, 1]);
        assert_eq!(s.apply(1, &center), center);
    }

    #[test]
    fn split_twist_is_identity() {
        let (d, ip) = a(3);
        let s = build_galois_action(&d, &ip, &[0, 1, 2], 1).unwrap();
        assert!(s.matrix.is_identity());
        assert!(s.is_split());
    }

    #[test]
    fn a3_swap_is_valid() {
        let (d, ip) = a(3);
        assert!(build_galois_action(&d, &ip, &[2, 1, 0], 2).is_ok());
    }

    #[test]
    fn invalid_twists_rejected() {
        let (d, ip) = a(3);
        assert!(matches!(
            build_galois_action(&d, &ip, &[1, 0, 2], 2),
            Err(Error::InvalidTwist(_))
        ));
        assert!(matches!(
            build_galois_action(&d, &ip, &[2, 1, 0], 3),
            Err(Error::InvalidTwist(_))
        ));
        let b = build_root_datum(&[CartanComponent::new(Family::B, 2)]).unwrap();
        let ipb = inner_product_default(&b);
        assert!(build_galois_action(&b, &ipb, &[1, 0], 2).is_err());
    }

    #[test]
    fn delta_orbit_examples() {
        let (d, ip) = a(2);
        let split = split_action(&d, &ip);
        let orb = delta_orbits(&d, &ip, &split);
        assert_eq!(orb.orbits, vec![vec![0], vec![1]]);
        assert_eq!(orb.twisted_coweights, d.fundamental_coweights(&ip));

        let s = build_galois_action(&d, &ip, &[1, 0], 2).unwrap();
        let orb = delta_orbits(&d, &ip, &s);
        assert_eq!(orb.orbits, vec![vec![0, 1]]);
        assert_eq!(orb.twisted_coweights[0], LatticeVec::cocharacter_int(&[1, 0, -1]));

        let (d, ip) = a(3);
        let s = build_galois_action(&d, &ip, &[2, 1, 0], 2).unwrap();
        let orb = delta_orbits(&d, &ip, &s);
        assert_eq!(orb.orbits, vec![vec![0, 2], vec![1]]);
        let w2 = &d.fundamental_coweights(&ip)[1];
        assert_eq!(orb.twisted_coweights[1], w2.scaled(q(2)));
        for w in &orb.twisted_coweights {
            assert_eq!(s.apply(1, w), *w);
        }
    }

    #[test]
    fn gamma_e_examples() {
        let (d, ip) = a(2);
        let s = build_galois_action(&d, &ip, &[1, 0], 2).unwrap();
        let c = gamma_e(&d, &s, &LatticeVec::cocharacter_int(&[1, 0, -1])).unwrap();
        assert_eq!((c.e_degree, c.gamma_e_order), (1, 2));
        let c = gamma_e(&d, &s, &LatticeVec::cocharacter_int(&[2, -1, -1])).unwrap();
        assert_eq!((c.e_degree, c.gamma_e_order), (2, 1));
        let split = split_action(&d, &ip);
        let c = gamma_e(&d, &split, &LatticeVec::cocharacter_int(&[2, -1, -1])).unwrap();
        assert_eq!((c.e_degree, c.gamma_e_order), (1, 1));
        assert_eq!(
            gamma_e(&d, &s, &LatticeVec::cocharacter_int(&[-1, 0, 1])).unwrap_err(),
            Error::NotDominant
        );
    }

    fn orbit_shape(action_perm: &[usize], e: usize, mu: &[i64]) -> Vec<(usize, usize)> {
        let (d, ip) = a(2);
        let w = generate_weyl(&d).unwrap();
        let s = build_galois_action(&d, &ip, action_perm, e).unwrap();
        let mu = LatticeVec::cocharacter_int(mu);
        let stab = stabilizer_w_mu(&d, &w, &mu).unwrap();
        let reps = kostant_reps(&w, &stab, &mu).unwrap();
        let class = gamma_e(&d, &s, &mu).unwrap();
        worbits(&w, &reps, &s, &class)
            .unwrap()
            .iter()
            .map(|o| (o.size, o.length))
            .collect()
    }

    #[test]
    fn worbit_examples() {
        assert_eq!(orbit_shape(&[0, 1], 1, &[1, 0, -1]).len(), 6);
        assert_eq!(
            orbit_shape(&[1, 0], 2, &[1, 0, -1]),
            vec![(1, 0), (2, 1), (2, 2), (1, 3)]
        );
        assert_eq!(orbit_shape(&[1, 0], 2, &[0, 0, 0]), vec![(1, 0)]);
        // Γ_E trivial when σ moves μ.
        assert_eq!(orbit_shape(&[1, 0], 2, &[2, -1, -1]), vec![(1, 0), (1, 1), (1, 2)]);
    }

    #[test]
    fn conjugation_permutes_words_letterwise() {
        let (d, ip) = a(3);
        let w = generate_weyl(&d).unwrap();
        let s = build_galois_action(&d, &ip, &[2, 1, 0], 2).unwrap();
        for e in &w.elements {
            let image = w.find(&s.conjugate(1, &e.matrix)).unwrap();
            let expect = e
                .word
                .iter()
                .map(|&i| d.reflection_matrix(s.perm[i]))
                .fold(RatMatrix::identity(4), |acc, m| acc.mul(&m));
            assert_eq!(w.elements[image].matrix, expect);
            assert_eq!(w.elements[image].length, e.length);
        }
    }
}
