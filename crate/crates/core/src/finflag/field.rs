use crate::{Error, Result};

/// Largest field the tables are built for.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Element of `F_{p^n}`: the integer whose base-`p` digits are the
/// coefficients in the polynomial basis `1, t, …, t^{n-1}`.
pub type Elem = u32;

/// `F_{p^n}` with exponential and logarithm tables for a primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    degree: u32,
    size: u32,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Splits a prime power `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p as u32)).then_some((p as u32, k))
}

impl Field {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let size = (p as u64)
            .checked_pow(degree)
            .filter(|&s| s <= MAX_FIELD_SIZE as u64)
            .ok_or_else(|| {
                Error::InvalidField(format!("{p}^{degree} exceeds the table limit {MAX_FIELD_SIZE}"))
            })? as u32;
        let mut field = Field { p, degree, size, exp: Vec::new(), log: Vec::new() };
        // Monic f = t^n + g with g of degree < n; x is primitive iff its
        // powers run through all nonzero residues before returning to 1.
        for g in 0..size {
            if degree > 1 && g % p == 0 {
                continue;
            }
            if let Some(exp) = field.power_table(g) {
                let mut log = vec![0; size as usize];
                for (k, &e) in exp.iter().enumerate() {
                    log[e as usize] = k as u32;
                }
                field.exp = exp;
                field.log = log;
                return Ok(field);
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Powers of `t` modulo `t^n + g`, if `t` has order `size - 1`.
    fn power_table(&self, g: Elem) -> Option<Vec<Elem>> {
        let order = self.size as usize - 1;
        let mut exp = Vec::with_capacity(order);
        let mut x: Elem = if self.degree == 1 { self.neg(g) } else { 1 };
        if self.degree == 1 {
            // Prime field: look for a primitive residue directly.
            if x == 0 {
                return None;
            }
            let mut y = 1;
            for _ in 0..order {
                exp.push(y);
                y = (y * x) % self.p;
                if y == 1 && exp.len() < order {
                    return None;
                }
            }
            return Some(exp);
        }
        let top = self.size / self.p;
        for k in 0..order {
            if k > 0 && x == 1 {
                return None;
            }
            exp.push(x);
            // x ← t·x, reducing t^n = -g.
            let lead = x / top;
            x = (x % top) * self.p;
            if lead != 0 {
                x = self.sub(x, self.scalar_mul(lead, g));
            }
        }
        (x == 1).then_some(exp)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u32, u32) -> u32) -> Elem {
        let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
        while a > 0 || b > 0 {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        self.digitwise(a, b, |x, y| (x + y) % p)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        self.digitwise(a, b, |x, y| (x + p - y) % p)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(0, a)
    }

    fn scalar_mul(&self, c: u32, a: Elem) -> Elem {
        let p = self.p;
        self.digitwise(a, 0, |x, _| (x * c) % p)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert_ne!(a, 0, "zero has no inverse");
        let order = self.size - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// The subfield of size `p^d`, for `d | degree`.
    pub fn subfield(&self, d: u32) -> Vec<Elem> {
        assert!(d > 0 && self.degree % d == 0, "F_{{p^{d}}} is not a subfield");
        let s = (self.p as u64).pow(d);
        self.elements().filter(|&x| self.pow(x, s) == x).collect()
    }
}

/// `F_q ⊆ F_{q^m}` with `q = p^k`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub field: Field,
    pub q: u64,
    pub m: u32,
    k: u32,
}

impl FieldTower {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        Ok(Self { field: Field::new(p, k * m)?, q, m, k })
    }

    /// Field size `q^m`.
    pub fn size(&self) -> u64 {
        self.field.size() as u64
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.field.pow(x, self.q)
    }

    /// `x ↦ x^{q^j}`.
    pub fn frobenius_power(&self, x: Elem, j: u32) -> Elem {
        self.field.pow(x, self.q.pow(j % self.m))
    }

    /// Elements of `F_{q^j}` for `j | m`.
    pub fn intermediate(&self, j: u32) -> Vec<Elem> {
        assert!(j > 0 && self.m % j == 0, "F_{{q^{j}}} is not an intermediate field");
        self.field.subfield(self.k * j)
    }

    pub fn base(&self) -> Vec<Elem> {
        self.intermediate(1)
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        self.frobenius(x) == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 6), (7, 1), (3, 3)] {
            let f = Field::new(p, n).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in els.iter().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            assert_eq!(f.pow(f.primitive(), (f.size() - 1) as u64), 1);
        }
    }

    #[test]
    fn frobenius_fixed_field() {
        for (q, m) in [(2, 2), (2, 3), (3, 2), (4, 2), (2, 6)] {
            let t = FieldTower::new(q, m).unwrap();
            assert_eq!(t.base().len() as u64, q);
            assert_eq!(t.field.elements().filter(|&x| t.is_in_base(x)).count() as u64, q);
            assert!(t.field.elements().all(|x| t.frobenius_power(x, m) == x));
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FieldTower::new(6, 1).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(FieldTower::new(2, 0).is_err());
    }
}
