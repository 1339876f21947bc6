//! Arithmetic in the residue rings `Z / p^e` for odd primes `p`, and the
//! solver for the congruence `k^2 - k + 1 = 0 (mod p^e)` that selects the
//! admissible twist parameter of the sigma graphs.

use std::fmt;

use thiserror::Error;

/// Moduli up to this bound are solved by exhaustive search; larger ones by
/// lifting the roots found modulo `p`.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{p}^{e} does not fit in 64 bits")]
    Overflow { p: u64, e: u32 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("{root} is not a root of k^2 - k + 1 modulo {p}")]
    NotARoot { root: u64, p: u64 },
    #[error("non-liftable root {root} modulo {p}: 2k - 1 is not a unit")]
    NonLiftable { root: u64, p: u64 },
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

/// The modulus `p^e` together with its factorisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    e: u32,
    modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self, ResidueError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(ResidueError::NotOddPrime(p));
        }
        let modulus = p.checked_pow(e).ok_or(ResidueError::Overflow { p, e })?;
        Ok(PrimePower { p, e, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the unit group, `p^(e-1) (p - 1)`.
    pub fn totient(&self) -> u64 {
        if self.e == 0 {
            1
        } else {
            self.modulus / self.p * (self.p - 1)
        }
    }

    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }

    pub fn is_unit(&self, u: u64) -> bool {
        self.modulus == 1 || u % self.p != 0
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of the unit `u` modulo `m`.
pub fn unit_order(u: u64, m: &PrimePower) -> Result<u64, ResidueError> {
    let u = u % m.modulus;
    if !m.is_unit(u) {
        return Err(ResidueError::NotAUnit { value: u, modulus: m.modulus });
    }
    let mut order = m.totient();
    let mut primes = prime_factors(m.p - 1);
    if m.e > 1 {
        primes.push(m.p);
    }
    for q in primes {
        while order % q == 0 && pow_mod(u, order / q, m.modulus) == 1 % m.modulus {
            order /= q;
        }
    }
    Ok(order)
}

fn eval_k(k: u64, m: u64) -> u64 {
    // k^2 - k + 1, computed without leaving [0, m)
    let sq = mul_mod(k, k, m);
    ((sq as u128 + m as u128 - (k % m) as u128 + 1) % m as u128) as u64
}

/// Residues `k` in `Z_{p^e}^*` with `k^2 - k + 1 = 0 (mod p^e)`, ascending.
pub fn solve_k(p: u64, e: u32) -> Result<Vec<u64>, ResidueError> {
    if e == 0 {
        return Err(ResidueError::ZeroExponent);
    }
    let m = PrimePower::new(p, e)?;
    if m.modulus <= BRUTE_FORCE_LIMIT {
        return Ok((1..m.modulus)
            .filter(|&k| k % p != 0 && eval_k(k, m.modulus) == 0)
            .collect());
    }
    let mut roots = Vec::new();
    for r in roots_mod_p(p) {
        match hensel_lift(r, p, e) {
            Ok(k) => roots.push(k),
            Err(ResidueError::NonLiftable { .. }) => {}
            Err(err) => return Err(err),
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Roots of `k^2 - k + 1` modulo the odd prime `p`.
fn roots_mod_p(p: u64) -> Vec<u64> {
    if p == 3 {
        return vec![2];
    }
    if p <= BRUTE_FORCE_LIMIT {
        return (1..p).filter(|&k| eval_k(k, p) == 0).collect();
    }
    // k = (1 +- sqrt(-3)) / 2
    let Some(root) = sqrt_mod_prime(p - 3, p) else {
        return Vec::new();
    };
    let half = inv_mod(2, p).expect("p is odd");
    let mut out = vec![
        mul_mod((1 + root) % p, half, p),
        mul_mod((1 + p - root) % p, half, p),
    ];
    out.sort_unstable();
    out.dedup();
    out
}

/// Tonelli-Shanks square root modulo an odd prime.
fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Lift a root of `k^2 - k + 1` modulo `p` to the unique root modulo `p^e`
/// congruent to it.
pub fn hensel_lift(root: u64, p: u64, e: u32) -> Result<u64, ResidueError> {
    if e == 0 {
        return Err(ResidueError::ZeroExponent);
    }
    let full = PrimePower::new(p, e)?;
    let root = root % p;
    if eval_k(root, p) != 0 {
        return Err(ResidueError::NotARoot { root, p });
    }
    if (2 * root + p - 1) % p == 0 {
        return Err(ResidueError::NonLiftable { root, p });
    }
    let mut k = root;
    let mut m = p;
    for _ in 1..e {
        m *= p;
        let f = eval_k(k, m);
        let df = (2 * (k as u128) + m as u128 - 1) % m as u128;
        let inv = inv_mod(df as u64, m).expect("derivative is a unit");
        k = ((k as u128 + m as u128 - mul_mod(f, inv, m) as u128) % m as u128) as u64;
    }
    debug_assert_eq!(eval_k(k, full.modulus), 0);
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(m: u64, p: u64) -> Vec<u64> {
        (0..m)
            .filter(|k| k % p != 0 && (k * k + 1 + m - k) % m == 0)
            .collect()
    }

    #[test]
    fn unit_order_examples() {
        let m7 = PrimePower::new(7, 1).unwrap();
        let m9 = PrimePower::new(3, 2).unwrap();
        assert_eq!(unit_order(1, &m7).unwrap(), 1);
        assert_eq!(unit_order(4, &m7).unwrap(), 3);
        assert_eq!(unit_order(2, &m9).unwrap(), 6);
        assert!(matches!(unit_order(3, &m9), Err(ResidueError::NotAUnit { .. })));
    }

    #[test]
    fn unit_order_matches_iteration() {
        for (p, e) in [(3, 3), (5, 2), (7, 2), (11, 1), (13, 2)] {
            let m = PrimePower::new(p, e).unwrap();
            for u in (1..m.modulus()).filter(|u| u % p != 0) {
                let mut n = 1;
                let mut acc = u;
                while acc != 1 {
                    acc = acc * u % m.modulus();
                    n += 1;
                }
                assert_eq!(unit_order(u, &m).unwrap(), n, "u={u} mod {m}");
            }
        }
    }

    #[test]
    fn solve_k_examples() {
        assert_eq!(solve_k(3, 1).unwrap(), vec![2]);
        assert_eq!(solve_k(7, 1).unwrap(), vec![3, 5]);
        assert!(solve_k(3, 2).unwrap().is_empty());
        assert_eq!(solve_k(13, 1).unwrap(), vec![4, 10]);
    }

    #[test]
    fn solve_k_rejects_bad_primes() {
        assert_eq!(solve_k(2, 1), Err(ResidueError::NotOddPrime(2)));
        assert_eq!(solve_k(9, 1), Err(ResidueError::NotOddPrime(9)));
        assert_eq!(solve_k(7, 0), Err(ResidueError::ZeroExponent));
        assert!(matches!(solve_k(3, 41), Err(ResidueError::Overflow { .. })));
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(3, 7, 1).unwrap(), 3);
        // brute force over k = 3 (mod 7) below 49: only 31 is a root
        assert_eq!(brute_roots(49, 7).into_iter().filter(|k| k % 7 == 3).collect::<Vec<_>>(), vec![31]);
        assert_eq!(hensel_lift(3, 7, 2).unwrap(), 31);
        assert_eq!(hensel_lift(2, 3, 2), Err(ResidueError::NonLiftable { root: 2, p: 3 }));
        assert_eq!(hensel_lift(2, 7, 2), Err(ResidueError::NotARoot { root: 2, p: 7 }));
    }

    #[test]
    fn hensel_path_agrees_with_brute_force_above_threshold() {
        // 7^8 = 5764801 exceeds the brute-force limit
        let roots = solve_k(7, 8).unwrap();
        assert_eq!(roots.len(), 2);
        let m = 7u64.pow(8);
        for &k in &roots {
            assert_eq!(eval_k(k, m), 0);
            assert_eq!(brute_roots(49, 7).contains(&(k % 49)), true);
        }
        assert_eq!(mul_mod(roots[0], roots[1], m), 1);
        // a prime above the limit exercises Tonelli-Shanks
        let p = 1_000_003;
        assert_eq!(p % 3, 1);
        let roots = solve_k(p, 1).unwrap();
        assert_eq!(roots.len(), 2);
        for &k in &roots {
            assert_eq!(eval_k(k, p), 0);
        }
    }

    #[test]
    fn root_count_by_residue_class() {
        for p in [5u64, 7, 11, 13, 17, 19, 31, 37] {
            for e in 1..=3 {
                let n = solve_k(p, e).unwrap().len();
                let expected = if p % 3 == 1 { 2 } else { 0 };
                assert_eq!(n, expected, "p={p} e={e}");
            }
        }
        assert_eq!(solve_k(3, 1).unwrap(), vec![2]);
        for e in 2..=6 {
            assert!(solve_k(3, e).unwrap().is_empty());
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
    }
}
