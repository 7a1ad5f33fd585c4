//! Exact arithmetic in F_q = F_p[x]/(m(x)) with explicit polynomial
//! representatives; no floating point anywhere. Field descriptions are
//! parsed from "p^a" (canonical modulus chosen deterministically) or
//! "p^a/c0,c1,...,1" with an explicit monic modulus.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, PartialEq, Eq)]
struct FqInner {
    p: u64,
    deg: usize,
    /// Monic modulus of degree `deg`, coefficients low-to-high, len deg+1.
    modulus: Vec<u64>,
}

/// A finite field F_{p^a}, shared by handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    inner: Arc<FqInner>,
}

/// An element of a particular Fq: polynomial coefficients low-to-high,
/// always of length exactly `deg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem {
    pub coeffs: Vec<u64>,
}

impl Fq {
    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fq {
            inner: Arc::new(FqInner {
                p,
                deg: 1,
                modulus: vec![0, 1], // x, i.e. representatives are constants
            }),
        })
    }

    /// F_{p^a} with the canonical modulus: the monic irreducible of degree
    /// a whose low-coefficient vector, read as a base-p number, is minimal.
    pub fn extension(p: u64, a: usize) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::BadField("extension degree must be >= 1".into()));
        }
        if a == 1 {
            return Fq::prime(p);
        }
        let mut lower = vec![0u64; a];
        loop {
            let mut modulus = lower.clone();
            modulus.push(1);
            if poly_is_irreducible(p, &modulus) {
                return Ok(Fq {
                    inner: Arc::new(FqInner { p, deg: a, modulus }),
                });
            }
            // increment `lower` as a base-p counter
            let mut k = 0;
            loop {
                if k == a {
                    return Err(Error::BadField(format!(
                        "no irreducible of degree {a} over F_{p}"
                    )));
                }
                lower[k] += 1;
                if lower[k] < p {
                    break;
                }
                lower[k] = 0;
                k += 1;
            }
        }
    }

    /// Field with an explicitly supplied monic modulus (coeffs low-to-high,
    /// the leading 1 included). Irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::BadField(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadField("modulus coefficients must lie in [0,p)".into()));
        }
        let deg = modulus.len() - 1;
        if deg > 1 && !poly_is_irreducible(p, &modulus) {
            return Err(Error::Reducible);
        }
        Ok(Fq {
            inner: Arc::new(FqInner { p, deg, modulus }),
        })
    }

    /// Parse "p^a", "p" or "p^a/c0,c1,...,1".
    pub fn parse(s: &str) -> Result<Fq> {
        let s = s.trim();
        let (head, tail) = match s.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let (p, a) = match head.split_once('^') {
            Some((ps, as_)) => {
                let p = ps
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad prime '{ps}'")))?;
                let a = as_
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent '{as_}'")))?;
                (p, a)
            }
            None => {
                let p = head
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad prime '{head}'")))?;
                (p, 1)
            }
        };
        match tail {
            None => Fq::extension(p, a),
            Some(t) => {
                let coeffs: Vec<u64> = t
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))
                    })
                    .collect::<Result<_>>()?;
                if coeffs.len() != a + 1 {
                    return Err(Error::BadField(format!(
                        "modulus must have degree {a}, got {} coefficients",
                        coeffs.len()
                    )));
                }
                Fq::with_modulus(p, coeffs)
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }
    pub fn deg(&self) -> usize {
        self.inner.deg
    }
    /// q = p^a.
    pub fn order(&self) -> u64 {
        self.inner.p.pow(self.inner.deg as u32)
    }
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            coeffs: vec![0; self.inner.deg],
        }
    }
    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    /// Constant embedding of a residue; also used for the p-ary integer
    /// encoding of elements: n = sum c_k p^k maps to sum c_k x^k.
    pub fn from_u64(&self, n: u64) -> FqElem {
        let mut coeffs = vec![0u64; self.inner.deg];
        let mut n = n;
        for c in coeffs.iter_mut() {
            *c = n % self.inner.p;
            n /= self.inner.p;
        }
        // residues beyond q wrap around in the top coefficient's base-p digit;
        // reject silently by reducing: any leftover means the encoding was
        // out of range, fold it into the constant term mod p for robustness.
        if n > 0 {
            coeffs[0] = (coeffs[0] + n % self.inner.p) % self.inner.p;
        }
        FqElem { coeffs }
    }

    /// Parse an element given as its base-p integer encoding.
    pub fn parse_elem(&self, s: &str) -> Result<FqElem> {
        let n = s
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
        if n >= self.order() {
            return Err(Error::Parse(format!(
                "element encoding {n} out of range for field of order {}",
                self.order()
            )));
        }
        Ok(self.from_u64(n))
    }

    /// Base-p integer encoding, inverse to from_u64 on [0, q).
    pub fn encode(&self, x: &FqElem) -> u64 {
        let mut n = 0u64;
        for &c in x.coeffs.iter().rev() {
            n = n * self.inner.p + c;
        }
        n
    }

    pub fn is_zero(&self, x: &FqElem) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let p = self.inner.p;
        FqElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        let p = self.inner.p;
        FqElem {
            coeffs: x.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let prod = poly_mul(self.inner.p, &x.coeffs, &y.coeffs);
        let red = poly_rem(self.inner.p, &prod, &self.inner.modulus);
        self.pad(red)
    }

    pub fn pow(&self, x: &FqElem, e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Exponentiation with signed exponent (inverts for negative e).
    pub fn powi(&self, x: &FqElem, e: i64) -> Result<FqElem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            let inv = self.inv(x)?;
            Ok(self.pow(&inv, (-e) as u64))
        }
    }

    /// Multiplicative inverse via x^(q-2).
    pub fn inv(&self, x: &FqElem) -> Result<FqElem> {
        if self.is_zero(x) {
            return Err(Error::BadField("division by zero".into()));
        }
        Ok(self.pow(x, self.order() - 2))
    }

    /// All q elements in p-ary encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |n| self.from_u64(n))
    }

    pub fn to_string_elem(&self, x: &FqElem) -> String {
        self.encode(x).to_string()
    }

    fn pad(&self, mut v: Vec<u64>) -> FqElem {
        v.resize(self.inner.deg, 0);
        FqElem { coeffs: v }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.deg == 1 {
            write!(f, "{}", self.inner.p)
        } else {
            write!(f, "{}^{}", self.inner.p, self.inner.deg)?;
            write!(f, "/")?;
            let parts: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

// ---- dense polynomial arithmetic over F_p (coeffs low-to-high) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    // m is monic, so no inversions needed
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &mk) in m.iter().enumerate() {
            let idx = k + shift;
            r[idx] = (r[idx] + p * lead - (lead * mk) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // make b monic before reduction
        let lead_inv = modinv(p, *b.last().unwrap());
        let monic: Vec<u64> = b.iter().map(|&c| (c * lead_inv) % p).collect();
        let r = poly_rem(p, &a, &monic);
        a = monic;
        b = r;
    }
    a
}

fn modinv(p: u64, a: u64) -> u64 {
    // p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_powmod_xq(p: u64, e_base: u64, e_deg: u32, m: &[u64]) -> Vec<u64> {
    // computes x^(e_base^e_deg) mod m by repeated p-power maps
    let mut cur = vec![0u64, 1]; // x
    cur = poly_rem(p, &cur, m);
    for _ in 0..e_deg {
        cur = poly_powmod(p, &cur, e_base, m);
    }
    cur
}

fn poly_powmod(p: u64, a: &[u64], e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = a.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(p, &poly_mul(p, &acc, &base), m);
        }
        base = poly_rem(p, &poly_mul(p, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn poly_is_irreducible(p: u64, m: &[u64]) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) == x mod m
    let xpn = poly_powmod_xq(p, p, n as u32, m);
    let mut x = vec![0u64, 1];
    x = poly_rem(p, &x, m);
    let mut diff: Vec<u64> = xpn
        .iter()
        .copied()
        .chain(std::iter::repeat(0))
        .zip(x.iter().copied().chain(std::iter::repeat(0)))
        .take(xpn.len().max(x.len()))
        .map(|(a, b)| (a + p - b) % p)
        .collect();
    poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    // for each prime divisor r of n: gcd(x^(p^(n/r)) - x, m) == 1
    let mut n_rest = n;
    let mut r = 2;
    let mut prime_divs = Vec::new();
    while r * r <= n_rest {
        if n_rest % r == 0 {
            prime_divs.push(r);
            while n_rest % r == 0 {
                n_rest /= r;
            }
        }
        r += 1;
    }
    if n_rest > 1 {
        prime_divs.push(n_rest);
    }
    for r in prime_divs {
        let xp = poly_powmod_xq(p, p, (n / r) as u32, m);
        let mut diff: Vec<u64> = xp
            .iter()
            .copied()
            .chain(std::iter::repeat(0))
            .zip(x.iter().copied().chain(std::iter::repeat(0)))
            .take(xp.len().max(x.len()))
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        poly_trim(&mut diff);
        let g = poly_gcd(p, &diff, m);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
