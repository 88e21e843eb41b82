//! Root data in fixed coordinate models, pairings, the invariant inner
//! product and fundamental (co)weights.
//!
//! Coordinate models per simple factor:
//!
//! | family | ambient | simple roots | inner-product scale |
//! |--------|---------|--------------|---------------------|
//! | `A_n`  | `Q^{n+1}` | `e_i - e_{i+1}` | 1 |
//! | `B_n`  | `Q^n` | `e_i - e_{i+1}`, `e_n` | 1 |
//! | `C_n`  | `Q^n` | `e_i - e_{i+1}`, `2 e_n` | 2 |
//! | `D_n`  | `Q^n` | `e_i - e_{i+1}`, `e_{n-1} + e_n` | 1 |
//! | `G_2`  | `Q^3` | `e_1 - e_2`, `-2e_1 + e_2 + e_3` | 3 |
//!
//! Characters and cocharacters share the ambient coordinates; the natural
//! pairing is the coordinate dot product. The scale column normalizes the
//! invariant form on cocharacters so short coroots have squared length 2.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, RatMatrix};
use crate::{Error, Rational, Result};

/// Default cap on the Weyl group order.
pub const WEYL_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" => Ok(Family::G),
            other => Err(Error::UnsupportedType {
                component: other.to_string(),
                reason: "family must be one of A, B, C, D, G".into(),
            }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

/// One simple factor of a Cartan type, e.g. `A_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanComponent {
    pub family: Family,
    pub rank: usize,
}

impl CartanComponent {
    pub fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    pub fn validate(&self) -> Result<()> {
        let min = match self.family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
            Family::G => 2,
        };
        if self.rank < min || (self.family == Family::G && self.rank != 2) {
            return Err(Error::UnsupportedType {
                component: self.to_string(),
                reason: format!("rank {} is not supported for family {}", self.rank, self.family),
            });
        }
        Ok(())
    }

    /// Classical order of the Weyl group, saturating on overflow.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).fold(1u128, |a, b| a.saturating_mul(b));
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => fact(n).saturating_mul(1u128 << n.min(127)),
            Family::D => fact(n).saturating_mul(1u128 << (n - 1).min(127)),
            Family::G => 12,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::G => 3,
            _ => self.rank,
        }
    }

    fn default_scale(&self) -> Rational {
        match self.family {
            Family::C => Rational::from_integer(2),
            Family::G => Rational::from_integer(3),
            _ => Rational::one(),
        }
    }

    /// Simple roots and coroots in the local coordinates of this factor.
    fn simple_system(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let dim = self.ambient_dim();
        let unit = |i: usize, c: i64| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::from_integer(c);
            v
        };
        let diff = |i: usize| linalg::sub(&unit(i, 1), &unit(i + 1, 1));
        let n = self.rank;
        let roots: Vec<Vec<Rational>> = match self.family {
            Family::A => (0..n).map(diff).collect(),
            Family::B => (0..n - 1).map(diff).chain([unit(n - 1, 1)]).collect(),
            Family::C => (0..n - 1).map(diff).chain([unit(n - 1, 2)]).collect(),
            Family::D => (0..n - 1)
                .map(diff)
                .chain([linalg::add(&unit(n - 2, 1), &unit(n - 1, 1))])
                .collect(),
            Family::G => vec![
                diff(0),
                vec![
                    Rational::from_integer(-2),
                    Rational::one(),
                    Rational::one(),
                ],
            ],
        };
        // In every model the coroot is 2α/(α·α) for the coordinate dot product.
        let coroots = roots
            .iter()
            .map(|a| linalg::scale(Rational::from_integer(2) / linalg::dot(a, a), a))
            .collect();
        (roots, coroots)
    }
}

impl fmt::Display for CartanComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Which lattice a vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Character,
    Cocharacter,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Character => "character",
            Side::Cocharacter => "cocharacter",
        }
    }
}

/// An element of `X^*(T)_Q` or `X_*(T)_Q` in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVec {
    pub side: Side,
    pub coords: Vec<Rational>,
}

impl LatticeVec {
    pub fn character(coords: Vec<Rational>) -> Self {
        Self { side: Side::Character, coords }
    }

    pub fn cocharacter(coords: Vec<Rational>) -> Self {
        Self { side: Side::Cocharacter, coords }
    }

    pub fn cocharacter_int(coords: &[i64]) -> Self {
        Self::cocharacter(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn character_int(coords: &[i64]) -> Self {
        Self::character(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, c: Rational) -> Self {
        Self { side: self.side, coords: linalg::scale(c, &self.coords) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.side, other.side, "adding vectors from different lattices");
        Self { side: self.side, coords: linalg::add(&self.coords, &other.coords) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn expect_side(&self, side: Side) -> Result<()> {
        if self.side == side {
            Ok(())
        } else {
            Err(Error::WrongSide { expected: side.name() })
        }
    }
}

/// Root datum in its coordinate model.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan_type: Vec<CartanComponent>,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<Rational>>,
    pub simple_coroots: Vec<Vec<Rational>>,
    /// `cartan_matrix[i][j] = ⟨α_i^∨, α_j⟩`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple factor owning each simple root.
    pub factor_of_root: Vec<usize>,
    /// Ambient coordinate range of each simple factor.
    pub factor_coords: Vec<Range<usize>>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

/// Builds the root datum of a product of simple types, with the default
/// Weyl-order budget.
pub fn build_root_datum(spec: &[CartanComponent]) -> Result<RootDatum> {
    build_root_datum_with_budget(spec, WEYL_BUDGET)
}

pub fn build_root_datum_with_budget(spec: &[CartanComponent], budget: u128) -> Result<RootDatum> {
    for c in spec {
        c.validate()?;
    }
    let order = spec
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.weyl_order()));
    if order > budget {
        return Err(Error::BudgetExceeded {
            what: format!("Weyl group of {}", type_label(spec)),
            needed: order,
            budget,
        });
    }

    let ambient_dim: usize = spec.iter().map(CartanComponent::ambient_dim).sum();
    let mut simple_roots = Vec::new();
    let mut simple_coroots = Vec::new();
    let mut factor_of_root = Vec::new();
    let mut factor_coords = Vec::new();
    let mut offset = 0;
    for (f, comp) in spec.iter().enumerate() {
        let dim = comp.ambient_dim();
        let embed = |v: Vec<Rational>| {
            let mut full = vec![Rational::zero(); ambient_dim];
            full[offset..offset + dim].copy_from_slice(&v);
            full
        };
        let (roots, coroots) = comp.simple_system();
        for (r, c) in roots.into_iter().zip(coroots) {
            simple_roots.push(embed(r));
            simple_coroots.push(embed(c));
            factor_of_root.push(f);
        }
        factor_coords.push(offset..offset + dim);
        offset += dim;
    }

    let rank = simple_roots.len();
    let mut cartan_matrix = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let v = linalg::dot(&simple_coroots[i], &simple_roots[j]);
            if !v.is_integer() {
                return Err(Error::Invariant(format!("non-integral Cartan entry ({i},{j})")));
            }
            cartan_matrix[i][j] = v.to_integer();
        }
    }

    let positive_roots = positive_roots_from_cartan(&cartan_matrix);
    let datum = RootDatum {
        cartan_type: spec.to_vec(),
        ambient_dim,
        simple_roots,
        simple_coroots,
        cartan_matrix,
        factor_of_root,
        factor_coords,
        positive_roots,
    };
    datum.check_invariants()?;
    Ok(datum)
}

/// Closure of the simple roots under simple reflections, in simple-root
/// coordinates, keeping the positive half.
fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut e = vec![0; rank];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for (i, row) in cartan.iter().enumerate() {
            let pairing: i64 = row.iter().zip(&r).map(|(a, c)| a * c).sum();
            let mut s = r.clone();
            s[i] -= pairing;
            if !seen.contains(&s) {
                stack.push(s);
            }
        }
    }
    seen.into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect()
}

pub fn type_label(spec: &[CartanComponent]) -> String {
    spec.iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn num_factors(&self) -> usize {
        self.cartan_type.len()
    }

    pub fn weyl_order(&self) -> u128 {
        self.cartan_type.iter().map(CartanComponent::weyl_order).product()
    }

    pub fn simple_root(&self, i: usize) -> LatticeVec {
        LatticeVec::character(self.simple_roots[i].clone())
    }

    pub fn simple_coroot(&self, i: usize) -> LatticeVec {
        LatticeVec::cocharacter(self.simple_coroots[i].clone())
    }

    /// A root given in simple-root coordinates, as a character vector.
    pub fn root_vector(&self, coeffs: &[i64]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, a) in coeffs.iter().zip(&self.simple_roots) {
            if *c != 0 {
                v = linalg::add(&v, &linalg::scale(Rational::from_integer(*c), a));
            }
        }
        v
    }

    /// `⟨λ, χ⟩` for a cocharacter `λ` and a character `χ`.
    pub fn pairing(&self, lambda: &LatticeVec, chi: &LatticeVec) -> Result<Rational> {
        lambda.expect_side(Side::Cocharacter)?;
        chi.expect_side(Side::Character)?;
        self.expect_dim(lambda)?;
        self.expect_dim(chi)?;
        Ok(linalg::dot(&lambda.coords, &chi.coords))
    }

    pub(crate) fn expect_dim(&self, v: &LatticeVec) -> Result<()> {
        if v.dim() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.dim() })
        }
    }

    /// Simple reflection `s_i` on a vector of either side.
    pub fn reflect(&self, i: usize, v: &LatticeVec) -> LatticeVec {
        let coords = match v.side {
            Side::Cocharacter => {
                let c = linalg::dot(&v.coords, &self.simple_roots[i]);
                linalg::sub(&v.coords, &linalg::scale(c, &self.simple_coroots[i]))
            }
            Side::Character => {
                let c = linalg::dot(&self.simple_coroots[i], &v.coords);
                linalg::sub(&v.coords, &linalg::scale(c, &self.simple_roots[i]))
            }
        };
        LatticeVec { side: v.side, coords }
    }

    /// Matrix of `s_i` on the cocharacter space.
    pub fn reflection_matrix(&self, i: usize) -> RatMatrix {
        let n = self.ambient_dim;
        let mut m = RatMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= self.simple_coroots[i][r] * self.simple_roots[i][c];
            }
        }
        m
    }

    pub fn is_dominant(&self, mu: &LatticeVec) -> bool {
        mu.side == Side::Cocharacter
            && self
                .simple_roots
                .iter()
                .all(|a| !linalg::dot(&mu.coords, a).is_negative())
    }

    /// Conjugates a cocharacter into the closed dominant chamber. Returns
    /// the dominant representative and the word `w` with `w·μ_in = μ_dom`
    /// (reflections listed in application order).
    pub fn dominant_representative(&self, mu: &LatticeVec) -> Result<(LatticeVec, Vec<usize>)> {
        mu.expect_side(Side::Cocharacter)?;
        self.expect_dim(mu)?;
        let mut current = mu.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank())
            .find(|&i| linalg::dot(&current.coords, &self.simple_roots[i]).is_negative())
        {
            current = self.reflect(i, &current);
            word.push(i);
        }
        Ok((current, word))
    }

    /// Fundamental weights `ω_i` in the span of the simple roots with
    /// `⟨α_j^∨, ω_i⟩ = δ_ij`.
    pub fn fundamental_weights(&self) -> Vec<LatticeVec> {
        let rank = self.rank();
        let at = RatMatrix::from_rows(
            &(0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| Rational::from_integer(self.cartan_matrix[j][i]))
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        let coeffs = at.inverse().expect("Cartan matrix is invertible");
        (0..rank)
            .map(|i| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                for (j, a) in self.simple_roots.iter().enumerate() {
                    v = linalg::add(&v, &linalg::scale(coeffs[(i, j)], a));
                }
                LatticeVec::character(v)
            })
            .collect()
    }

    /// Fundamental coweights `ω*_i`, the duals of the fundamental weights.
    pub fn fundamental_coweights(&self, ip: &InnerProduct) -> Vec<LatticeVec> {
        self.fundamental_weights()
            .iter()
            .map(|w| ip.dualize(w))
            .collect()
    }

    /// The standard Cartan matrix of the declared type, assembled block by
    /// block from the usual Dynkin data.
    fn standard_cartan(&self) -> Vec<Vec<i64>> {
        let rank = self.rank();
        let mut m = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for comp in &self.cartan_type {
            let n = comp.rank;
            for i in 0..n {
                m[off + i][off + i] = 2;
                if i + 1 < n {
                    m[off + i][off + i + 1] = -1;
                    m[off + i + 1][off + i] = -1;
                }
            }
            match comp.family {
                Family::A => {}
                // ⟨α_n^∨, α_{n-1}⟩ = -2 with α_n short.
                Family::B => m[off + n - 1][off + n - 2] = -2,
                Family::C => m[off + n - 2][off + n - 1] = -2,
                Family::D => {
                    m[off + n - 2][off + n - 1] = 0;
                    m[off + n - 1][off + n - 2] = 0;
                    m[off + n - 3][off + n - 1] = -1;
                    m[off + n - 1][off + n - 3] = -1;
                }
                Family::G => m[off][off + 1] = -3,
            }
            off += n;
        }
        m
    }

    fn check_invariants(&self) -> Result<()> {
        let rank = self.rank();
        for i in 0..rank {
            if self.cartan_matrix[i][i] != 2 {
                return Err(Error::Invariant(format!("Cartan diagonal at {i}")));
            }
            for j in 0..rank {
                if i != j && self.cartan_matrix[i][j] > 0 {
                    return Err(Error::Invariant(format!("positive off-diagonal at ({i},{j})")));
                }
            }
        }
        let roots = RatMatrix::from_rows(&self.simple_roots);
        if roots.rank() != rank {
            return Err(Error::Invariant("simple roots are linearly dependent".into()));
        }
        if self.cartan_matrix != self.standard_cartan() {
            return Err(Error::Invariant("Cartan matrix differs from the declared type".into()));
        }
        Ok(())
    }
}

/// Weyl- and Galois-invariant positive definite form on the cocharacter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    pub gram: RatMatrix,
    gram_inv: RatMatrix,
    /// Scalar multiple of the coordinate dot product used on each factor.
    pub factor_scales: Vec<Rational>,
}

/// The normalized invariant form: short coroots of every simple factor
/// have squared length 2.
pub fn inner_product_default(datum: &RootDatum) -> InnerProduct {
    let scales: Vec<Rational> = datum
        .cartan_type
        .iter()
        .map(CartanComponent::default_scale)
        .collect();
    InnerProduct::with_factor_scales(datum, &scales)
}

impl InnerProduct {
    /// Form equal to `scales[f]` times the dot product on factor `f`.
    pub fn with_factor_scales(datum: &RootDatum, scales: &[Rational]) -> Self {
        assert_eq!(scales.len(), datum.num_factors(), "one scale per simple factor");
        assert!(scales.iter().all(Signed::is_positive), "scales must be positive");
        let mut diag = vec![Rational::zero(); datum.ambient_dim];
        for (range, s) in datum.factor_coords.iter().zip(scales) {
            for i in range.clone() {
                diag[i] = *s;
            }
        }
        let inv: Vec<Rational> = diag.iter().map(|d| d.recip()).collect();
        Self {
            gram: RatMatrix::diagonal(&diag),
            gram_inv: RatMatrix::diagonal(&inv),
            factor_scales: scales.to_vec(),
        }
    }

    /// Multiplies the form on each factor by a further positive scalar.
    pub fn rescaled(&self, datum: &RootDatum, factors: &[Rational]) -> Self {
        let scales: Vec<Rational> = self
            .factor_scales
            .iter()
            .zip(factors)
            .map(|(a, b)| a * b)
            .collect();
        Self::with_factor_scales(datum, &scales)
    }

    /// `(λ, λ')` on cocharacters.
    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.gram.form(u, v)
    }

    /// The induced form on characters.
    pub fn inner_char(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.gram_inv.form(u, v)
    }

    /// Identification `X_*(T)_Q ↔ X^*(T)_Q` induced by the form.
    pub fn dualize(&self, v: &LatticeVec) -> LatticeVec {
        match v.side {
            Side::Cocharacter => LatticeVec::character(self.gram.apply(&v.coords)),
            Side::Character => LatticeVec::cocharacter(self.gram_inv.apply(&v.coords)),
        }
    }

    /// Positive definiteness on the coroot span and invariance under every
    /// simple reflection.
    pub fn check(&self, datum: &RootDatum) -> Result<()> {
        let coroot_gram = RatMatrix::from_rows(
            &datum
                .simple_coroots
                .iter()
                .map(|a| datum.simple_coroots.iter().map(|b| self.inner(a, b)).collect())
                .collect::<Vec<_>>(),
        );
        if !is_positive_definite(&coroot_gram) {
            return Err(Error::Invariant("form is not positive definite on coroots".into()));
        }
        let n = datum.ambient_dim;
        for i in 0..datum.rank() {
            let s = datum.reflection_matrix(i);
            if s.transpose().mul(&self.gram).mul(&s) != self.gram {
                return Err(Error::Invariant(format!("form is not invariant under s_{}", i + 1)));
            }
        }
        debug_assert_eq!(self.gram.rows(), n);
        Ok(())
    }
}

/// Sylvester's criterion by symmetric Gaussian elimination.
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    let n = m.rows();
    let mut a = m.clone();
    for k in 0..n {
        let p = a[(k, k)];
        if !p.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = a[(i, k)] / p;
            for j in k..n {
                let delta = f * a[(k, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    true
}
