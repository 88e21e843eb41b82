use super::field::{Elem, Field};
use crate::{Error, Result};

/// Default enumeration budget.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// A subspace of `F^n`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Elem>>,
}

/// Reduced row-echelon form of the given rows; zero rows dropped.
pub fn rref(field: &Field, mut rows: Vec<Vec<Elem>>, n: usize) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Subspace {
    pub fn span(field: &Field, n: usize, vectors: Vec<Vec<Elem>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == n));
        Self { n, rows: rref(field, vectors, n).0 }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as Elem).collect())
            .collect();
        Self { n, rows }
    }

    /// `span{e_0, …, e_{d-1}}`.
    pub fn coordinate(n: usize, d: usize) -> Self {
        let mut s = Self::full(n);
        s.rows.truncate(d);
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("echelon rows are nonzero"))
            .collect()
    }

    pub fn sum(&self, field: &Field, other: &Self) -> Self {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::span(field, self.n, rows)
    }

    pub fn intersection_dim(&self, field: &Field, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum(field, other).dim()
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Self) -> bool {
        self.dim() <= other.dim() && other.sum(field, self).dim() == other.dim()
    }

    /// Apply `f` to every coordinate and re-canonicalize.
    pub fn map_entries(&self, field: &Field, f: impl Fn(Elem) -> Elem) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect();
        Self::span(field, self.n, rows)
    }

    /// Image under `v ↦ g v`.
    pub fn transform(&self, field: &Field, g: &[Vec<Elem>]) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|v| {
                g.iter()
                    .map(|gr| gr.iter().zip(v).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
                    .collect()
            })
            .collect();
        Self::span(field, self.n, rows)
    }

    /// Orthogonal complement for the antidiagonal form `Σ v_i w_{n-1-i}`.
    pub fn antidiagonal_perp(&self, field: &Field) -> Self {
        let reversed: Vec<Vec<Elem>> =
            self.rows.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Self::span(field, self.n, nullspace(field, reversed, self.n))
    }

    pub fn entries_in(&self, pred: impl Fn(Elem) -> bool) -> bool {
        self.rows.iter().flatten().all(|&x| pred(x))
    }
}

/// Basis of `{v : A v = 0}`.
pub fn nullspace(field: &Field, rows: Vec<Vec<Elem>>, n: usize) -> Vec<Vec<Elem>> {
    let (r, pivots) = rref(field, rows, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

/// `[n choose d]_s`.
pub fn gaussian_binomial(n: usize, d: usize, s: u128) -> u128 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= s.pow((n - i) as u32) - 1;
        den *= s.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// All `d`-dimensional subspaces of `F^n` spanned by vectors with
/// coordinates in `entries` (a subfield of `F`), in echelon form.
pub fn enumerate_subspaces(
    n: usize,
    d: usize,
    entries: &[Elem],
    budget: u128,
) -> Result<Vec<Subspace>> {
    let needed = gaussian_binomial(n, d, entries.len() as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: format!("{d}-subspaces of F^{n}"), needed, budget });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for pivots in combinations(n, d) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![0; n]; d];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &k) in free.iter().zip(&digits) {
                rows[r][c] = entries[k];
            }
            out.push(Subspace { n, rows });
            let Some(i) = digits.iter().position(|&k| k + 1 < entries.len()) else {
                break;
            };
            digits[i] += 1;
            digits[..i].iter_mut().for_each(|k| *k = 0);
        }
    }
    debug_assert_eq!(out.len() as u128, needed);
    Ok(out)
}
