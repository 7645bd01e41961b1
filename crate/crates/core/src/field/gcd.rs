//! Multivariate gcd over the integers.
//!
//! Recursive content / primitive-part reduction with a subresultant
//! polynomial remainder sequence in a chosen main variable. A modular
//! image in one variable is computed first: when it proves the primitive
//! parts coprime (or that one divides the other) the remainder sequence is
//! skipped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::ZPoly;

type Uni = Vec<ZPoly>;

/// Gcd of two integer polynomials, normalized to a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert_eq!(a.nvars(), b.nvars(), "polynomial arity mismatch");
    let n = a.nvars();
    if a.is_zero() {
        return b.primitive_part_keep_content();
    }
    if b.is_zero() {
        return a.primitive_part_keep_content();
    }
    if a.is_constant() || b.is_constant() {
        return ZPoly::constant(n, a.content().gcd(&b.content()));
    }
    if a == b || *a == b.neg() {
        return a.primitive_part_keep_content();
    }

    let va = a.variables();
    let vb = b.variables();
    // a variable occurring in only one argument can be eliminated by
    // taking the content with respect to it
    for v in 0..n {
        if va[v] && !vb[v] {
            let ca = content_wrt(a, v);
            return gcd(&ca, b);
        }
        if vb[v] && !va[v] {
            let cb = content_wrt(b, v);
            return gcd(a, &cb);
        }
    }

    let main = (0..n)
        .filter(|&v| va[v])
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomials have a variable");

    let ua = a.to_univariate(main);
    let ub = b.to_univariate(main);
    let ca = gcd_list(&ua);
    let cb = gcd_list(&ub);
    let c = gcd(&ca, &cb);
    let pa: Uni = ua.iter().map(|p| div_exact(p, &ca)).collect();
    let pb: Uni = ub.iter().map(|p| div_exact(p, &cb)).collect();

    let prim = primitive_gcd(&pa, &pb, main, n);
    c.mul(&prim).primitive_part_keep_content()
}

/// Gcd of univariate primitive parts (in `main`), returned as a polynomial
/// of content one.
fn primitive_gcd(pa: &Uni, pb: &Uni, main: usize, n: usize) -> ZPoly {
    let da = pa.len() - 1;
    let db = pb.len() - 1;
    if da == 0 || db == 0 {
        return ZPoly::one(n);
    }
    match modular_image_degree(pa, pb, main) {
        Some(0) => return ZPoly::one(n),
        Some(d) => {
            let a = ZPoly::from_univariate(pa, main, n);
            let b = ZPoly::from_univariate(pb, main, n);
            if d == db && db <= da
                && a.exact_div(&b).is_some() {
                    return b.primitive_part();
                }
            if d == da && da <= db
                && b.exact_div(&a).is_some() {
                    return a.primitive_part();
                }
        }
        None => {}
    }
    let g = subresultant(pa.clone(), pb.clone());
    let cg = gcd_list(&g);
    let g: Uni = g.iter().map(|p| div_exact(p, &cg)).collect();
    ZPoly::from_univariate(&g, main, n).primitive_part()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_wrt(p: &ZPoly, var: usize) -> ZPoly {
    gcd_list(&p.to_univariate(var))
}

fn gcd_list(ps: &[ZPoly]) -> ZPoly {
    let mut nonzero: Vec<&ZPoly> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return ZPoly::zero(ps.first().map(|p| p.nvars()).unwrap_or(0));
    }
    // start from the sparsest coefficients
    nonzero.sort_by_key(|p| (p.total_degree(), p.len()));
    let mut g = nonzero[0].primitive_part_keep_content();
    for (k, p) in nonzero.iter().enumerate().skip(1) {
        if g.is_constant() {
            // only integer content can remain
            let mut c = g.as_constant().unwrap();
            for q in &nonzero[k..] {
                if c.is_one() {
                    break;
                }
                c = c.gcd(&q.content());
            }
            return ZPoly::constant(g.nvars(), c);
        }
        g = gcd(&g, p);
    }
    g
}

fn div_exact(p: &ZPoly, d: &ZPoly) -> ZPoly {
    p.exact_div(d).expect("content divides every coefficient")
}

fn uni_trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(|p| p.is_zero()) {
        u.pop();
    }
}

fn uni_is_zero(u: &Uni) -> bool {
    u.iter().all(|p| p.is_zero())
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut e = (a.len() - 1) as i64 - db as i64 + 1;
    uni_trim(&mut r);
    while !uni_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for p in r.iter_mut() {
            *p = p.mul(&lb);
        }
        for (k, bk) in b.iter().enumerate() {
            let t = lr.mul(bk);
            r[k + shift] = r[k + shift].sub(&t);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        uni_trim(&mut r);
        e -= 1;
        if r.is_empty() {
            r.push(ZPoly::zero(lb.nvars()));
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for p in r.iter_mut() {
            *p = p.mul(&f);
        }
    }
    r
}

/// Subresultant remainder sequence; returns the last nonzero remainder.
fn subresultant(mut a: Uni, mut b: Uni) -> Uni {
    uni_trim(&mut a);
    uni_trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let n = a[0].nvars();
    let mut g = ZPoly::one(n);
    let mut h = ZPoly::one(n);
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if uni_is_zero(&r) {
            return b;
        }
        if r.len() == 1 {
            return vec![ZPoly::one(n)];
        }
        let divisor = g.mul(&h.pow(delta));
        let next: Uni = r.iter().map(|p| div_exact(p, &divisor)).collect();
        a = b;
        b = next;
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            div_exact(&g.pow(delta), &h.pow(delta - 1))
        };
    }
}

const PRIME: u64 = 2_147_483_647;

fn mod_p(c: &BigInt) -> u64 {
    let r = c.mod_floor(&BigInt::from(PRIME));
    r.to_u64().unwrap()
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

fn eval_mod(p: &ZPoly, point: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (m, c) in p.terms() {
        let mut t = mod_p(c);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = mul_mod(t, pow_mod(point[i], e as u64));
            }
        }
        acc = (acc + t) % PRIME;
    }
    acc
}

fn uni_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb_inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), lb_inv);
            for (k, &bk) in b.iter().enumerate() {
                let s = mul_mod(f, bk);
                a[k + shift] = (a[k + shift] + PRIME - s) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Degree of the gcd of modular images of `a` and `b` in the main variable.
/// Because the leading coefficients do not vanish at the sample point this
/// bounds the true gcd degree from above.
fn modular_image_degree(a: &Uni, b: &Uni, _main: usize) -> Option<usize> {
    let n = a[0].nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (a.len() * 31 + b.len()) as u64);
    for _ in 0..4 {
        let point: Vec<u64> = (0..n).map(|_| rng.gen_range(2..PRIME - 1)).collect();
        let ia: Vec<u64> = a.iter().map(|c| eval_mod(c, &point)).collect();
        let ib: Vec<u64> = b.iter().map(|c| eval_mod(c, &point)).collect();
        if *ia.last().unwrap() == 0 || *ib.last().unwrap() == 0 {
            continue;
        }
        let g = uni_gcd_mod(ia, ib);
        return Some(g.len().saturating_sub(1));
    }
    None
}

impl ZPoly {
    /// Normalizes the sign so the leading coefficient is positive, keeping
    /// the content.
    pub(crate) fn primitive_part_keep_content(&self) -> ZPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

#[allow(dead_code)]
fn is_unit(p: &ZPoly) -> bool {
    p.as_constant().is_some_and(|c| c.abs().is_one())
}
