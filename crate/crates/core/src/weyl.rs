//! Weyl group enumeration, lengths, the stabilizer `W_μ` and Kostant
//! representatives of `W/W_μ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed};

use crate::linalg::{self, RatMatrix};
use crate::rootdata::{LatticeVec, RootDatum, Side};
use crate::{Error, Rational, Result};

/// An element of `W`, stored as its exact matrix on the cocharacter space
/// together with its lexicographically least reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Reduced word `s_{w[0]} s_{w[1]} ⋯`, 0-indexed simple reflections.
    pub word: Vec<usize>,
    pub matrix: RatMatrix,
    pub length: usize,
}

impl WeylElement {
    /// Action on a lattice vector. Cocharacters use the matrix; characters
    /// use the contragredient so that pairings are preserved.
    pub fn act(&self, datum: &RootDatum, v: &LatticeVec) -> LatticeVec {
        match v.side {
            Side::Cocharacter => LatticeVec::cocharacter(self.matrix.apply(&v.coords)),
            Side::Character => self
                .word
                .iter()
                .rev()
                .fold(v.clone(), |acc, &i| datum.reflect(i, &acc)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word_label(&self) -> String {
        if self.word.is_empty() {
            "1".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join("")
        }
    }
}

/// Complete enumeration of `W`, ordered by length and then by word.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<RatMatrix, usize>,
    /// Cocharacter pairing to 1 with every simple root.
    rho_check: Vec<Rational>,
}

pub fn generate_weyl(datum: &RootDatum) -> Result<WeylGroup> {
    generate_weyl_with_budget(datum, crate::rootdata::WEYL_BUDGET)
}

pub fn generate_weyl_with_budget(datum: &RootDatum, budget: u128) -> Result<WeylGroup> {
    let expected = datum.weyl_order();
    if expected > budget {
        return Err(Error::BudgetExceeded {
            what: "Weyl group".into(),
            needed: expected,
            budget,
        });
    }
    let n = datum.ambient_dim;
    let rank = datum.rank();
    let identity = WeylElement {
        word: Vec::new(),
        matrix: RatMatrix::identity(n),
        length: 0,
    };
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity.matrix, 0usize)]);
    let mut layer_start = 0;

    loop {
        let layer_end = elements.len();
        let mut next: BTreeMap<Vec<usize>, RatMatrix> = BTreeMap::new();
        let mut next_index: HashMap<RatMatrix, Vec<usize>> = HashMap::new();
        for u in &elements[layer_start..layer_end] {
            for i in 0..rank {
                let m = left_reflect(datum, i, &u.matrix);
                if index.contains_key(&m) {
                    continue;
                }
                let mut word = Vec::with_capacity(u.word.len() + 1);
                word.push(i);
                word.extend_from_slice(&u.word);
                match next_index.get_mut(&m) {
                    Some(existing) if *existing <= word => {}
                    Some(existing) => {
                        next.remove(existing);
                        *existing = word.clone();
                        next.insert(word, m);
                    }
                    None => {
                        next_index.insert(m.clone(), word.clone());
                        next.insert(word, m);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let length = elements[layer_end - 1].length + 1;
        for (word, matrix) in next {
            index.insert(matrix.clone(), elements.len());
            elements.push(WeylElement { word, matrix, length });
            if elements.len() as u128 > budget {
                return Err(Error::BudgetExceeded {
                    what: "Weyl group".into(),
                    needed: expected,
                    budget,
                });
            }
        }
        layer_start = layer_end;
    }

    if elements.len() as u128 != expected {
        return Err(Error::Invariant(format!(
            "enumerated {} Weyl elements, expected {expected}",
            elements.len()
        )));
    }

    let cartan_t = RatMatrix::from_rows(
        &(0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| Rational::from_integer(datum.cartan_matrix[j][i]))
                    .collect()
            })
            .collect::<Vec<_>>(),
    );
    let coeffs = linalg::solve(&cartan_t, &vec![Rational::one(); rank])
        .expect("Cartan matrix is invertible");
    let rho_check = datum
        .simple_coroots
        .iter()
        .zip(&coeffs)
        .fold(vec![Rational::from_integer(0); n], |acc, (c, k)| {
            linalg::add(&acc, &linalg::scale(*k, c))
        });

    Ok(WeylGroup { elements, index, rho_check })
}

/// `s_i · M`, using `s_i(v) = v - ⟨v, α_i⟩ α_i^∨`.
fn left_reflect(datum: &RootDatum, i: usize, m: &RatMatrix) -> RatMatrix {
    let n = datum.ambient_dim;
    let alpha = &datum.simple_roots[i];
    let coroot = &datum.simple_coroots[i];
    let row: Vec<Rational> = (0..n)
        .map(|c| (0..n).fold(Rational::from_integer(0), |acc, r| acc + alpha[r] * m[(r, c)]))
        .collect();
    let mut out = m.clone();
    for r in 0..n {
        if coroot[r] == Rational::from_integer(0) {
            continue;
        }
        for c in 0..n {
            out[(r, c)] -= coroot[r] * row[c];
        }
    }
    out
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("W is nonempty")
    }

    pub fn find(&self, m: &RatMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].matrix.mul(&self.elements[b].matrix);
        self.find(&m).expect("W is closed under composition")
    }

    /// Whether a root (character vector) is positive.
    pub fn is_positive_root(&self, root: &[Rational]) -> bool {
        linalg::dot(&self.rho_check, root).is_positive()
    }

    /// `#{β ∈ R^+ : wβ ∈ R^-}`.
    pub fn inversion_count(&self, datum: &RootDatum, idx: usize) -> usize {
        let w = &self.elements[idx];
        datum
            .positive_roots
            .iter()
            .filter(|beta| {
                let image = w.act(datum, &LatticeVec::character(datum.root_vector(beta)));
                !self.is_positive_root(&image.coords)
            })
            .count()
    }

    /// Whether `w` is the minimal element of `w·W_J`, i.e. `w α_j > 0` for
    /// all `j ∈ J`.
    pub fn is_minimal_in_coset(&self, datum: &RootDatum, idx: usize, subset: &[usize]) -> bool {
        let w = &self.elements[idx];
        subset.iter().all(|&j| {
            let image = w.act(datum, &datum.simple_root(j));
            self.is_positive_root(&image.coords)
        })
    }

    /// Elements whose reduced words only use reflections from `subset`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].word.iter().all(|s| subset.contains(s)))
            .collect()
    }
}

/// `W_μ = {w : w·μ = μ}` for dominant `μ`, checked against the parabolic
/// subgroup generated by the simple reflections fixing `μ`.
pub fn stabilizer_w_mu(datum: &RootDatum, group: &WeylGroup, mu: &LatticeVec) -> Result<Vec<usize>> {
    datum.expect_dim(mu)?;
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let stab: Vec<usize> = (0..group.order())
        .filter(|&i| group.elements[i].matrix.apply(&mu.coords) == mu.coords)
        .collect();
    let fixing = simple_reflections_fixing(datum, mu);
    if stab != group.parabolic_subgroup(&fixing) {
        return Err(Error::Invariant(
            "stabilizer of μ differs from its standard parabolic subgroup".into(),
        ));
    }
    Ok(stab)
}

/// Simple roots `α` with `⟨μ, α⟩ = 0`.
pub fn simple_reflections_fixing(datum: &RootDatum, mu: &LatticeVec) -> Vec<usize> {
    (0..datum.rank())
        .filter(|&i| linalg::dot(&mu.coords, &datum.simple_roots[i]) == Rational::from_integer(0))
        .collect()
}

/// Minimal-length representatives of `W/W_μ`, one per coset, ordered by
/// length and word. The coset `wW_μ` is identified by the point `w·μ`.
pub fn kostant_reps(group: &WeylGroup, stabilizer: &[usize], mu: &LatticeVec) -> Result<Vec<usize>> {
    let mut cosets: HashMap<Vec<Rational>, Vec<usize>> = HashMap::new();
    for (i, w) in group.elements.iter().enumerate() {
        cosets.entry(w.matrix.apply(&mu.coords)).or_default().push(i);
    }
    let mut reps = Vec::with_capacity(cosets.len());
    for members in cosets.values() {
        if members.len() != stabilizer.len() {
            return Err(Error::Invariant("coset size differs from |W_μ|".into()));
        }
        let min = members.iter().map(|&i| group.elements[i].length).min().unwrap();
        let minimal: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&i| group.elements[i].length == min)
            .collect();
        if minimal.len() != 1 {
            return Err(Error::Invariant("coset has no unique minimal element".into()));
        }
        reps.push(minimal[0]);
    }
    // Elements are stored in (length, word) order, so index order is that order.
    reps.sort_unstable();
    Ok(reps)
}
