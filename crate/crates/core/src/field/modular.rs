//! Ranks and kernels over a number field through word-size primes.
//!
//! Reducing the coordinates of p-integral elements modulo `p` is a ring map
//! onto `F_p[x]/(minpoly)`. Minors that survive the reduction are nonzero
//! over the field, so an elimination modulo `p` whose pivots are all units
//! never finds more than the true rank. Images of the reduced row echelon
//! form for several primes are combined by Chinese remaindering, lifted by
//! rational reconstruction and checked over the field. A checked kernel of
//! dimension `cols - rank_p` is then the whole kernel.
//!
//! Every function here returns `None` when it cannot certify its answer, and
//! callers fall back to exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number_field::{Elem, Field, MAX_DEGREE};
use super::rational::Rational;
use crate::par::{self, Exec};

type Residue = [u64; MAX_DEGREE];

/// Primes tried before giving up on lifting.
const MAX_PRIMES: usize = 4096;
/// Largest number of primes handed to the pool at once.
const MAX_BATCH: usize = 32;

/// Primes stay below `2^31` so products of residues fit in a `u64`.
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_scalar(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Primes below `2^31`, largest first.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Primes {
        Primes { next: (1 << 31) - 1 }
    }

    fn take(&mut self, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let c = self.next;
            self.next -= 2;
            if primal_check::miller_rabin(c) {
                out.push(c);
            }
        }
        out
    }
}

/// `F_p[x]/(mu)` with `mu` the reduced minimal polynomial.
struct ModRing {
    p: u64,
    d: usize,
    /// Coefficients of `mu` below the leading 1, constant first.
    mu: Residue,
}

impl ModRing {
    fn new(field: &Field, p: u64) -> Option<ModRing> {
        let d = field.degree();
        let mut mu = [0; MAX_DEGREE];
        for (i, c) in field.minpoly()[..d].iter().enumerate() {
            mu[i] = reduce_rational(c, p)?;
        }
        Some(ModRing { p, d, mu })
    }

    fn reduce(&self, e: &Elem) -> Option<Residue> {
        let mut r = [0; MAX_DEGREE];
        for (i, c) in e.iter().enumerate() {
            r[i] = reduce_rational(c, self.p)?;
        }
        Some(r)
    }

    fn is_zero(&self, a: &Residue) -> bool {
        a[..self.d].iter().all(|&c| c == 0)
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let (p, d) = (self.p, self.d);
        if d == 1 {
            return [mulmod(a[0], b[0], p), 0, 0, 0];
        }
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let t = mulmod(c, self.mu[i], p);
                prod[k - d + i] = (prod[k - d + i] + p - t) % p;
            }
        }
        let mut out = [0; MAX_DEGREE];
        out[..d].copy_from_slice(&prod[..d]);
        out
    }

    /// `a -= f * b`.
    fn sub_mul_assign(&self, a: &mut Residue, f: &Residue, b: &Residue) {
        let t = self.mul(f, b);
        for i in 0..self.d {
            a[i] = (a[i] + self.p - t[i]) % self.p;
        }
    }

    fn neg(&self, a: &Residue) -> Residue {
        let mut out = [0; MAX_DEGREE];
        for i in 0..self.d {
            out[i] = (self.p - a[i]) % self.p;
        }
        out
    }

    /// Inverse of a unit; `None` for zero divisors.
    fn inv(&self, a: &Residue) -> Option<Residue> {
        let p = self.p;
        if self.d == 1 {
            return (a[0] != 0).then(|| [inv_scalar(a[0], p), 0, 0, 0]);
        }
        let mut mu: Vec<u64> = self.mu[..self.d].to_vec();
        mu.push(1);
        let (g, s) = poly_ext_gcd(&mu, &trim(a[..self.d].to_vec()), p);
        if g.len() != 1 {
            return None;
        }
        let c = inv_scalar(g[0], p);
        let mut out = [0; MAX_DEGREE];
        for (i, x) in s.iter().enumerate() {
            out[i] = mulmod(*x, c, p);
        }
        Some(out)
    }
}

fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_u64()) {
        let d = d % p;
        return (d != 0).then(|| mulmod(n.rem_euclid(p as i64) as u64, inv_scalar(d, p), p));
    }
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    Some(mulmod(num, inv_scalar(den, p), p))
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub_mul(a: &[u64], q: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = a.to_vec();
    out.resize(a.len().max(q.len() + b.len()), 0);
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + p - mulmod(*x, *y, p)) % p;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let lead = inv_scalar(*b.last().expect("nonzero divisor"), p);
    let mut q = vec![0; a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().expect("nonempty"), lead, p);
        q[shift] = c;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, *y, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// `(g, s)` with `s a = g (mod m)`.
fn poly_ext_gcd(m: &[u64], a: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s2 = poly_sub_mul(&s0, &q, &s1, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Reduced row echelon form modulo `p`: pivot columns and, for every free
/// column, the negated entries of the pivot rows in that column.
struct Image {
    pivots: Vec<usize>,
    kernel: Vec<Vec<Residue>>,
}

fn image(field: &Field, rows: &[Vec<Elem>], cols: usize, p: u64) -> Option<Image> {
    let ring = ModRing::new(field, p)?;
    let mut m: Vec<Vec<Residue>> = Vec::with_capacity(rows.len());
    for row in rows {
        m.push(row.iter().map(|e| ring.reduce(e)).collect::<Option<_>>()?);
    }
    let mut pivots = Vec::new();
    for col in 0..cols {
        let rank = pivots.len();
        if rank == m.len() {
            break;
        }
        let Some(r) = (rank..m.len()).find(|&r| !ring.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, r);
        let inv = ring.inv(&m[rank][col])?;
        for e in m[rank][col..].iter_mut() {
            *e = ring.mul(e, &inv);
        }
        let pivot_row = std::mem::take(&mut m[rank]);
        let support: Vec<usize> = (col + 1..cols).filter(|&j| !ring.is_zero(&pivot_row[j])).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || ring.is_zero(&row[col]) {
                continue;
            }
            let factor = std::mem::replace(&mut row[col], [0; MAX_DEGREE]);
            for &j in &support {
                ring.sub_mul_assign(&mut row[j], &factor, &pivot_row[j]);
            }
        }
        m[rank] = pivot_row;
        pivots.push(col);
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| (0..pivots.len()).map(|r| ring.neg(&m[r][free])).collect())
        .collect();
    Some(Image { pivots, kernel })
}

/// Rank modulo one prime where everything reduces; a lower bound for the
/// rank over the field.
fn rank_bound(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Option<usize> {
    let mut primes = Primes::new();
    (0..8).find_map(|_| image(field, rows, cols, primes.take(1)[0])).map(|img| img.pivots.len())
}

/// Residues of every kernel entry coordinate modulo the product of the
/// primes seen so far with the best pivot pattern.
struct Lift {
    pivots: Vec<usize>,
    kernel_dim: usize,
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Lift {
    fn start(img: Image, p: u64, d: usize) -> Lift {
        let values = img
            .kernel
            .iter()
            .flatten()
            .flat_map(|r| r[..d].iter().map(|&x| BigInt::from(x)))
            .collect();
        Lift {
            pivots: img.pivots,
            kernel_dim: img.kernel.len(),
            modulus: BigInt::from(p),
            values,
        }
    }

    fn absorb(&mut self, img: &Image, p: u64, d: usize) {
        let pb = BigInt::from(p);
        let n_inv = inv_scalar(self.modulus.mod_floor(&pb).to_u64().expect("below p"), p);
        let residues = img.kernel.iter().flatten().flat_map(|r| r[..d].iter().copied());
        for (x, r) in self.values.iter_mut().zip(residues) {
            let cur = x.mod_floor(&pb).to_u64().expect("below p");
            let k = mulmod((r + p - cur) % p, n_inv, p);
            *x += &self.modulus * k;
        }
        self.modulus *= pb;
    }

    fn reconstruct(&self) -> Option<Vec<Rational>> {
        let bound = (&self.modulus >> 1usize).sqrt();
        self.values.iter().map(|x| rational_reconstruction(x, &self.modulus, &bound)).collect()
    }
}

/// The fraction `n/d` with `|n|, d <= bound` congruent to `a` modulo `m`.
fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Integral multiple of a vector, as power-basis coordinates; `None` for zeros.
fn integral(v: &[Elem]) -> Vec<Option<Vec<BigInt>>> {
    let den = v.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter()
        .map(|e| {
            (!e.iter().all(Zero::is_zero))
                .then(|| e.iter().map(|q| q.numer() * (&den / q.denom())).collect())
        })
        .collect()
}

/// Exact check that every vector is annihilated by every row. Products are
/// accumulated as integer polynomials in `α` and reduced once per row.
fn all_in_kernel(field: &Field, rows: &[Vec<Elem>], vectors: &[Vec<Elem>]) -> bool {
    let d = field.degree();
    let rows: Vec<Vec<Option<Vec<BigInt>>>> = rows.iter().map(|r| integral(r)).collect();
    vectors.iter().all(|v| {
        let v = integral(v);
        let support: Vec<(usize, &Vec<BigInt>)> =
            v.iter().enumerate().filter_map(|(j, c)| c.as_ref().map(|c| (j, c))).collect();
        rows.iter().all(|row| {
            let mut acc = vec![BigInt::zero(); 2 * d - 1];
            for &(j, b) in &support {
                if let Some(a) = &row[j] {
                    for (i, x) in a.iter().enumerate() {
                        for (k, y) in b.iter().enumerate() {
                            acc[i + k] += x * y;
                        }
                    }
                }
            }
            let acc = acc.into_iter().map(Rational::from_integer).collect();
            field.is_zero(&field.reduce_poly(acc))
        })
    })
}

/// The kernel basis read off the reduced row echelon form, as exact
/// elimination would return it.
pub(crate) fn kernel(field: &Field, rows: &[Vec<Elem>], cols: usize, exec: Exec) -> Option<Vec<Vec<Elem>>> {
    let d = field.degree();
    let mut primes = Primes::new();
    let mut lift: Option<Lift> = None;
    // Reconstructed values that every prime since has agreed with.
    let mut candidate: Option<Vec<Rational>> = None;
    let mut confirmed = false;
    let mut next_attempt_bits = 0;
    let (mut used, mut batch_size) = (0, 2);
    while used < MAX_PRIMES {
        let batch = primes.take(batch_size);
        used += batch_size;
        batch_size = (batch_size * 2).min(MAX_BATCH);
        let images = par::map(exec, &batch, |&p| image(field, rows, cols, p));
        for (&p, img) in batch.iter().zip(images) {
            let Some(img) = img else { continue };
            match &mut lift {
                Some(l) if l.pivots == img.pivots => {
                    if let Some(values) = &candidate {
                        if agrees(values, &img, p, d) {
                            confirmed = true;
                        } else {
                            candidate = None;
                        }
                    }
                    l.absorb(&img, p, d);
                }
                Some(l) if better_or_equal(&l.pivots, &img.pivots) => {}
                _ => {
                    lift = Some(Lift::start(img, p, d));
                    candidate = None;
                    next_attempt_bits = 0;
                }
            }
        }
        let Some(l) = &lift else { continue };
        if l.kernel_dim == 0 {
            // The modular rank already equals the number of columns.
            return Some(Vec::new());
        }
        if let (Some(values), true) = (&candidate, confirmed) {
            let vectors = assemble(field, l, values, cols);
            if all_in_kernel(field, rows, &vectors) {
                return Some(vectors);
            }
            candidate = None;
        }
        confirmed = false;
        if candidate.is_none() && l.modulus.bits() >= next_attempt_bits {
            next_attempt_bits = 2 * l.modulus.bits();
            candidate = l.reconstruct();
        }
    }
    None
}

/// Pivot columns found modulo a good prime: the most pivots, and among
/// equally many the earliest columns.
fn better_or_equal(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a <= b)
}

fn agrees(values: &[Rational], img: &Image, p: u64, d: usize) -> bool {
    let residues = img.kernel.iter().flatten().flat_map(|r| r[..d].iter().copied());
    values.iter().zip(residues).all(|(q, r)| reduce_rational(q, p) == Some(r))
}

fn assemble(field: &Field, l: &Lift, values: &[Rational], cols: usize) -> Vec<Vec<Elem>> {
    let d = field.degree();
    let rank = l.pivots.len();
    let mut is_pivot = vec![false; cols];
    for &c in &l.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .enumerate()
        .map(|(k, free)| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (r, &pc) in l.pivots.iter().enumerate() {
                let at = (k * rank + r) * d;
                v[pc] = values[at..at + d].iter().cloned().collect();
            }
            v
        })
        .collect()
}

/// Exact rank: certified directly when the modular rank is already maximal,
/// otherwise through the kernel on the shorter side.
pub(crate) fn rank(field: &Field, rows: &[Vec<Elem>], cols: usize, exec: Exec) -> Option<usize> {
    let n = rows.len();
    let bound = rank_bound(field, rows, cols)?;
    if bound == n.min(cols) {
        return Some(bound);
    }
    if n <= cols {
        let transposed: Vec<Vec<Elem>> = (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        kernel(field, &transposed, n, exec).map(|k| n - k.len())
    } else {
        kernel(field, rows, cols, exec).map(|k| cols - k.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        let bound = (&m >> 1usize).sqrt();
        for (n, d) in [(3i64, 7i64), (-5, 11), (0, 1), (123, 456)] {
            let q = Rational::new(n.into(), d.into());
            let inv_d = BigInt::from(d).extended_gcd(&m).x.mod_floor(&m);
            let a = (BigInt::from(n) * inv_d).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m, &bound), Some(q));
        }
    }

    #[test]
    fn ring_inverse_in_cyclotomic_extension() {
        let f = crate::arrangement::catalog::eisenstein_field();
        let p = Primes::new().take(1)[0];
        let ring = ModRing::new(&f, p).unwrap();
        let w = ring.reduce(&f.generator()).unwrap();
        let one = ring.mul(&w, &ring.inv(&w).unwrap());
        assert_eq!(one, [1, 0, 0, 0]);
        let w3 = ring.mul(&ring.mul(&w, &w), &w);
        assert_eq!(w3, [1, 0, 0, 0]);
    }

    #[test]
    fn kernel_matches_hand_computation() {
        let q = Field::rationals();
        let e = |n: i64| q.from_int(n);
        let rows = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)]];
        let k = kernel(&q, &rows, 3, Exec::Sequential).unwrap();
        assert_eq!(k, vec![vec![e(-2), e(1), e(0)], vec![e(-3), e(0), e(1)]]);
        assert_eq!(rank(&q, &rows, 3, Exec::Sequential), Some(1));
        let half = q.from_rational(Rational::new(1.into(), 2.into()));
        let rows = vec![vec![e(2), e(-1)], vec![e(4), e(-2)]];
        assert_eq!(kernel(&q, &rows, 2, Exec::Sequential).unwrap(), vec![vec![half, e(1)]]);
    }
}
