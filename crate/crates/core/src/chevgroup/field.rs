//! Finite fields GF(p^k) for p ∈ {2, 3}, k ≤ 8.
//!
//! Elements are stored as integers whose base-p digits are the coefficients
//! of a polynomial in a root of a fixed primitive polynomial.

use std::fmt;

use super::ChevError;

pub type Elem = u16;

#[derive(Clone)]
pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients of the primitive polynomial below the leading term.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    mul_table: Option<Vec<Elem>>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Gf {
    pub fn new(p: u32, k: u32) -> Result<Gf, ChevError> {
        if !(p == 2 || p == 3) || k == 0 || k > 8 {
            return Err(ChevError::Field(format!("GF({p}^{k}) is not supported")));
        }
        let q = p.pow(k);
        // First polynomial x^k + ... (in base-p order) whose root generates GF(q)*.
        for m in 0..q {
            let modulus = digits(m, p, k);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = Self::tables(p, k, &modulus) {
                let mut f = Gf {
                    p,
                    k,
                    q,
                    modulus,
                    exp,
                    log,
                    mul_table: None,
                };
                if q <= 256 {
                    let mut t = vec![0; (q * q) as usize];
                    for a in 0..q {
                        for b in 0..q {
                            t[(a * q + b) as usize] = f.mul_slow(a as Elem, b as Elem);
                        }
                    }
                    f.mul_table = Some(t);
                }
                return Ok(f);
            }
        }
        Err(ChevError::Field(format!(
            "no primitive polynomial for GF({p}^{k})"
        )))
    }

    /// Field of order `q`, which must be 2^k or 3^k.
    pub fn of_order(q: u32) -> Result<Gf, ChevError> {
        for p in [2u32, 3] {
            let mut k = 0;
            let mut x = q;
            while x > 1 && x.is_multiple_of(p) {
                x /= p;
                k += 1;
            }
            if x == 1 && k > 0 {
                return Gf::new(p, k);
            }
        }
        Err(ChevError::Field(format!("{q} is not a power of 2 or 3")))
    }

    fn tables(p: u32, k: u32, modulus: &[u32]) -> Option<(Vec<Elem>, Vec<u32>)> {
        let q = p.pow(k);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        for i in 0..q - 1 {
            let v = undigits(&cur, p);
            if log[v as usize] != u32::MAX {
                return None;
            }
            log[v as usize] = i;
            exp.push(v as Elem);
            // Multiply by the generator x, reducing x^k = -Σ modulus_i x^i.
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k as usize {
                cur[j] = (cur[j] + (p - modulus[j] % p) * top) % p;
            }
        }
        Some((exp, log))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// All elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }

    /// Primitive element (root of the defining polynomial).
    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a as u32, b as u32, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        out as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a as u32, 0u32, 1u32);
        while a > 0 {
            out += ((3 - a % 3) % 3) * place;
            a /= 3;
            place *= 3;
        }
        out as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, ChevError> {
        if a == 0 {
            return Err(ChevError::Field("inverse of zero".into()));
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    /// `a^e` for any integer `e`; `0^0 = 1`, negative powers of zero are errors.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem, ChevError> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(ChevError::Field("negative power of zero".into())),
            };
        }
        let n = (self.q - 1) as i64;
        let s = (self.log[a as usize] as i64 * e).rem_euclid(n);
        Ok(self.exp[s as usize])
    }

    /// Scalar multiplication table row for a fixed `s`, used in inner loops.
    pub fn mul_row(&self, s: Elem) -> Vec<Elem> {
        (0..self.q as Elem).map(|x| self.mul(s, x)).collect()
    }

    /// Additive basis over the prime field: 1, g, g², …, g^{k-1}.
    pub fn prime_basis(&self) -> Vec<Elem> {
        (0..self.k)
            .map(|i| self.pow(self.generator(), i as i64).expect("nonzero"))
            .collect()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}
