//! Factorization of integer polynomials.
//!
//! Squarefree decomposition first, then each squarefree part is factored
//! modulo a small prime (distinct-degree plus Cantor–Zassenhaus splitting),
//! the modular factors are Hensel-lifted past a Mignotte bound and finally
//! recombined by subset search.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;

/// Default degree cap for [`factor_rational`].
pub const DEFAULT_FACTOR_CAP: usize = 8;

/// Irreducible factorization with multiplicities, up to a rational constant.
///
/// Every factor is primitive with positive leading coefficient. Factors are
/// ordered by degree, then by coefficients.
pub fn factor_rational(p: &IntPolynomial, cap: usize) -> Result<Vec<(IntPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if p.deg() > cap {
        return Err(Error::DegreeCapExceeded {
            degree: p.deg(),
            cap,
        });
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

fn sort_factors(v: &mut [(IntPolynomial, usize)]) {
    v.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
}

/// Irreducible factors of a squarefree polynomial of positive degree.
pub fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    if f.coeff(0).is_zero() {
        out.push(IntPolynomial::from_i64s(&[0, 1]));
        f = f.div_exact(&IntPolynomial::from_i64s(&[0, 1])).expect("x divides");
        if f.deg() == 0 {
            return out;
        }
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    out.extend(zassenhaus(&f));
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let lc = f.leading();
    let Some((p, modular)) = choose_prime(f) else {
        unreachable!("a squarefree integer polynomial is squarefree modulo all but finitely many primes")
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let n = f.deg();
    let norm = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let p_big = BigInt::from(p);
    let mut modulus = p_big.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(f, &modular, p, &modulus);
    recombine(f, lifted, &modulus)
}

fn choose_prime(f: &IntPolynomial) -> Option<(u64, Vec<Vec<u64>>)> {
    let lc = f.leading();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in primes().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        let d = deriv(&fp, p);
        if poly_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let factors = factor_mod_p(&monic(&fp, p), p);
        if factors.len() == 1 {
            return Some((p, factors));
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    best
}

fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---------- arithmetic in F_p[x], coefficients constant first ----------

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn reduce(f: &IntPolynomial, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let Some(&l) = a.last() else {
        return Vec::new();
    };
    let li = inv_mod(l, p);
    a.iter().map(|c| c * li % p).collect()
}

fn deriv(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn sub_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mul_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn divrem_p(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let li = inv_mod(*b.last().expect("nonzero divisor"), p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1;
        let c = r[k] * li % p;
        let shift = k - db;
        q[shift] = c;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem_p(a, b, p).1
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem_p(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
fn ext_gcd_p(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem_p(&r0, &r1, p);
        let s2 = sub_p(&s0, &mul_p(&q, &s1, p), p);
        let t2 = sub_p(&t0, &mul_p(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv_mod(*r0.last().expect("nonzero gcd"), p);
    let scale = |v: &[u64]| trim(v.iter().map(|c| c * l % p).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

fn powmod_poly(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let base = rem_p(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = rem_p(&mul_p(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = rem_p(&mul_p(&result, &base, p), modulus, p);
        }
    }
    result
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 1;
    while rest.len() > 2 * i {
        h = powmod_poly(&h, &pe, &rest, p);
        let g = poly_gcd(&rest, &sub_p(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), i));
            rest = divrem_p(&rest, &g, p).0;
            h = rem_p(&h, &rest, p);
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let exp = if p == 2 {
        // not used: odd primes only
        BigUint::one()
    } else {
        (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32)
    };
    loop {
        let a: Vec<u64> = trim((0..n).map(|_| rng.random_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = poly_gcd(f, &a, p);
        let candidate = if g.len() > 1 && g.len() < f.len() {
            g
        } else {
            let b = sub_p(&powmod_poly(&a, &exp, f, p), &[1], p);
            poly_gcd(f, &b, p)
        };
        if candidate.len() > 1 && candidate.len() < f.len() {
            let other = divrem_p(f, &candidate, p).0;
            equal_degree(&candidate, d, p, rng, out);
            equal_degree(&monic(&other, p), d, p, rng, out);
            return;
        }
    }
}

// ---------- Hensel lifting over Z/mZ ----------

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zmod(&out, m)
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod(a, m);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1;
        let c = r[k].clone();
        let shift = k - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = (&r[shift + j] - &c * y).mod_floor(m);
        }
        q[shift] = c;
        r = ztrim(r);
    }
    (ztrim(q), r)
}

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn product_p(fs: &[Vec<u64>], p: u64) -> Vec<u64> {
    fs.iter().fold(vec![1u64], |acc, f| mul_p(&acc, f, p))
}

/// Lifts `f ≡ lc(f) * prod(factors) (mod p)` to monic factors modulo `modulus`.
fn hensel_lift(f: &IntPolynomial, factors: &[Vec<u64>], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    let fz: ZPoly = f.coeffs().to_vec();
    let mut out = Vec::new();
    lift_tree(&zmod(&fz, modulus), factors, p, modulus, &mut out);
    out
}

fn lift_tree(f: &[BigInt], factors: &[Vec<u64>], p: u64, modulus: &BigInt, out: &mut Vec<ZPoly>) {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = mod_inverse(&lc, modulus);
        out.push(zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), modulus));
        return;
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let pb = BigInt::from(p);
    let lc_p = f.last().expect("nonzero").mod_floor(&pb).to_u64().expect("fits");
    let g0: Vec<u64> = product_p(left, p).iter().map(|c| c * lc_p % p).collect();
    let h0 = product_p(right, p);
    let (_, s0, t0) = ext_gcd_p(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (to_z(&g0), to_z(&h0), to_z(&s0), to_z(&t0));
    let mut m = pb.clone();
    while &m < modulus {
        m = &m * &m;
        if &m > modulus {
            m = modulus.clone();
        }
        let e = zsub(f, &zmul(&g, &h, &m), &m);
        let (q, r) = zdivrem_monic(&zmul(&s, &e, &m), &h, &m);
        let g1 = zadd(&zadd(&g, &zmul(&t, &e, &m), &m), &zmul(&q, &g, &m), &m);
        let h1 = zadd(&h, &r, &m);
        let b = zsub(
            &zadd(&zmul(&s, &g1, &m), &zmul(&t, &h1, &m), &m),
            &[BigInt::one()],
            &m,
        );
        let (c, d) = zdivrem_monic(&zmul(&s, &b, &m), &h1, &m);
        let s1 = zsub(&s, &d, &m);
        let t1 = zsub(&zsub(&t, &zmul(&t, &b, &m), &m), &zmul(&c, &g1, &m), &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
    }
    lift_tree(&g, left, p, modulus, out);
    lift_tree(&h, right, p, modulus, out);
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPolynomial {
    let half = m >> 1;
    IntPolynomial::new(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn recombine(f: &IntPolynomial, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<IntPolynomial> {
    let mut f = f.clone();
    let mut remaining: Vec<ZPoly> = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = f.leading();
        let target = f.scale(&lc);
        for subset in combinations(remaining.len(), size) {
            let chosen = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zmul(&acc, &remaining[i], modulus));
            let g = symmetric(&chosen, modulus);
            let f0 = target.coeff(0);
            if !g.coeff(0).is_zero() && !(&f0 % g.coeff(0)).is_zero() {
                continue;
            }
            let rest = (0..remaining.len())
                .filter(|i| !subset.contains(i))
                .fold(vec![lc.clone()], |acc, i| zmul(&acc, &remaining[i], modulus));
            let h = symmetric(&rest, modulus);
            if g.mul(&h) == target {
                out.push(g.primitive_part());
                f = h.primitive_part();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
