//! Exact arithmetic in GF(q^2) for q = p^e, built on exp/log tables with
//! Zech logarithms for addition.
//!
//! The field is constructed deterministically: the modulus is the
//! lexicographically smallest primitive polynomial of degree 2e over GF(p)
//! (coefficient tuple compared constant term first), and `mu` is the residue
//! class of the indeterminate. This makes every derived index (lines, graph
//! vertices, orbit representatives) bit-reproducible across runs.

use thiserror::Error;

/// Cap on q = p^e. Everything here is table-driven, so the practical sizes
/// are far smaller; the cap just rejects obviously hopeless requests early.
pub const MAX_Q: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field too large: q = {p}^{e} exceeds {MAX_Q}")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("division by zero")]
    DivideByZero,
    #[error("modulus is not a primitive polynomial of the requested degree")]
    NotPrimitive,
}

/// Element of GF(q^2), stored as the discrete log with respect to `mu`.
///
/// `Elem::ZERO` is a sentinel; every nonzero element is `mu^a` for exactly
/// one exponent `a` in `0..q^2-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elem(u32);

const ZERO_REP: u32 = u32::MAX;

impl Elem {
    pub const ZERO: Elem = Elem(ZERO_REP);
    pub const ONE: Elem = Elem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_REP
    }

    /// Discrete log with respect to `mu`, or `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Total order: zero first, then by exponent. Used wherever a
    /// deterministic scan order over field elements is needed.
    #[inline]
    fn sort_key(self) -> u64 {
        if self.is_zero() {
            0
        } else {
            self.0 as u64 + 1
        }
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Arithmetic context for GF(q^2), q = p^e.
///
/// Immutable after construction; all operations are pure table lookups, so a
/// `FieldSpec` can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    order: u64,
    /// Monic modulus of degree 2e over GF(p), constant term first.
    modulus: Vec<u64>,
    /// exp[a] = packed coefficient vector of mu^a, a in 0..q^2-1.
    exp: Vec<u32>,
    /// log[packed] = a with mu^a = packed; log[0] is unused.
    log: Vec<u32>,
    /// zech[a] = log(1 + mu^a), or ZERO_REP when 1 + mu^a = 0.
    zech: Vec<u32>,
    /// Exponent of -1 (0 in characteristic 2).
    neg_one: u32,
    /// Exponent of nu = mu^{(q-1)gcd(2,q)/2}.
    nu: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
        if acc > MAX_Q * MAX_Q {
            return None;
        }
    }
    Some(acc)
}

/// Builds GF(p^{2e}) with the lexicographically smallest primitive modulus.
pub fn build_field(p: u64, e: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if e == 0 {
        return Err(FieldError::FieldTooLarge { p, e });
    }
    let q = checked_pow(p, e).filter(|&q| q <= MAX_Q).ok_or(FieldError::FieldTooLarge { p, e })?;
    let deg = 2 * e as usize;
    // Odometer over the non-leading coefficients, constant term first.
    let mut coeffs = vec![0u64; deg];
    loop {
        let mut modulus = coeffs.clone();
        modulus.push(1);
        if let Some(spec) = FieldSpec::try_build(p, e, q, modulus) {
            return Ok(spec);
        }
        let mut pos = deg;
        loop {
            if pos == 0 {
                // Exhausted all monic candidates; cannot happen since a
                // primitive polynomial of every degree exists over GF(p).
                return Err(FieldError::NotPrimitive);
            }
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

/// Builds GF(p^{2e}) from an explicit modulus (constant term first, monic,
/// length 2e+1). Intended for cross-checking against other systems' field
/// presentations.
pub fn build_field_with_modulus(p: u64, e: u32, modulus: &[u64]) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    let q = checked_pow(p, e).filter(|&q| q <= MAX_Q).ok_or(FieldError::FieldTooLarge { p, e })?;
    let deg = 2 * e as usize;
    if modulus.len() != deg + 1 || modulus[deg] != 1 || modulus.iter().any(|&c| c >= p) {
        return Err(FieldError::NotPrimitive);
    }
    FieldSpec::try_build(p, e, q, modulus.to_vec()).ok_or(FieldError::NotPrimitive)
}

impl FieldSpec {
    /// Attempts to build the table set for the given modulus. Returns `None`
    /// unless the residue class of x has multiplicative order exactly
    /// p^{2e} - 1, which simultaneously certifies that the modulus is
    /// irreducible and primitive.
    fn try_build(p: u64, e: u32, q: u64, modulus: Vec<u64>) -> Option<FieldSpec> {
        let deg = 2 * e as usize;
        let order = q * q;
        let n = (order - 1) as usize;

        let pack = |poly: &[u64]| -> u32 {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = acc * p + c;
            }
            acc as u32
        };

        let mut exp = vec![0u32; n];
        let mut log = vec![ZERO_REP; order as usize];
        // cur = mu^a as a coefficient vector.
        let mut cur = vec![0u64; deg];
        cur[0] = 1;
        for a in 0..n {
            let packed = pack(&cur);
            if packed == 0 || log[packed as usize] != ZERO_REP {
                return None; // hit zero or a repeat before closing the cycle
            }
            exp[a] = packed;
            log[packed as usize] = a as u32;
            // cur *= x, reduced by the monic modulus.
            let carry = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for i in 0..deg {
                    // subtract carry * modulus[i]
                    cur[i] = (cur[i] + (p - modulus[i] % p) * carry) % p;
                }
            }
        }
        // mu^n must close the cycle back to 1.
        if pack(&cur) != 1 {
            return None;
        }

        // Zech table: zech[a] = log(1 + mu^a).
        let one_packed = exp[0];
        let unpack_add = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a as u64, b as u64);
            let mut acc = 0u64;
            let mut scale = 1u64;
            for _ in 0..deg {
                acc += scale * ((a % p + b % p) % p);
                a /= p;
                b /= p;
                scale *= p;
            }
            acc as u32
        };
        let mut zech = vec![ZERO_REP; n];
        for a in 0..n {
            let s = unpack_add(exp[a], one_packed);
            if s != 0 {
                zech[a] = log[s as usize];
            }
        }

        let neg_one = if p == 2 { 0 } else { (n / 2) as u32 };
        // nu = mu^{(q-1)gcd(2,q)/2}: mu^{q-1} for even q, mu^{(q-1)/2} for odd q.
        let nu = if q % 2 == 0 { (q - 1) as u32 } else { ((q - 1) / 2) as u32 };

        let spec = FieldSpec { p, e, q, order, modulus, exp, log, zech, neg_one, nu };

        // Notation sanity: nu^{q+1} = -1 must hold in every correctly built field.
        let nu_elem = Elem(spec.nu);
        assert_eq!(
            spec.pow_u(nu_elem, q + 1),
            spec.neg(Elem::ONE),
            "field construction bug: nu^(q+1) != -1"
        );
        Some(spec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// q^2, the number of field elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// exp table: packed coefficient vector of mu^a for each exponent a.
    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// log table indexed by packed coefficient vector; entry for 0 unused.
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    /// Coefficients of the element over GF(p), constant term first.
    pub fn elem_coeffs(&self, a: Elem) -> Vec<u64> {
        let deg = 2 * self.e as usize;
        let mut packed = match a.log() {
            None => 0u64,
            Some(l) => self.exp[l as usize] as u64,
        };
        let mut out = Vec::with_capacity(deg);
        for _ in 0..deg {
            out.push(packed % self.p);
            packed /= self.p;
        }
        out
    }

    pub fn mu(&self) -> Elem {
        Elem(1 % (self.order as u32 - 1))
    }

    /// nu = mu^{(q-1)gcd(2,q)/2}; satisfies nu^{q+1} = -1.
    pub fn nu(&self) -> Elem {
        Elem(self.nu)
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// mu^k with k reduced mod q^2-1.
    pub fn mu_pow(&self, k: i64) -> Elem {
        let n = (self.order - 1) as i64;
        Elem(k.rem_euclid(n) as u32)
    }

    /// All q^2 elements, zero first then ascending exponents.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        let n = self.order - 1;
        std::iter::once(Elem::ZERO).chain((0..n as u32).map(Elem))
    }

    #[inline]
    fn n(&self) -> u32 {
        (self.order - 1) as u32
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.n();
        // a + b = mu^la (1 + mu^(lb-la))
        let (la, lb) = (a.0, b.0);
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == ZERO_REP {
            Elem::ZERO
        } else {
            Elem((la + z) % n)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            a
        } else {
            Elem((a.0 + self.neg_one) % self.n())
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            Elem::ZERO
        } else {
            Elem((a.0 + b.0) % self.n())
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivideByZero);
        }
        let n = self.n();
        Ok(Elem((n - a.0) % n))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k for k >= 0, with 0^0 = 1.
    pub fn pow_u(&self, a: Elem, k: u64) -> Elem {
        if a.is_zero() {
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let n = self.n() as u64;
        Elem(((a.0 as u64 * (k % n)) % n) as u32)
    }

    /// a^k for any integer k; negative exponents of zero are rejected.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return if k > 0 {
                Ok(Elem::ZERO)
            } else if k == 0 {
                Ok(Elem::ONE)
            } else {
                Err(FieldError::DivideByZero)
            };
        }
        let n = (self.order - 1) as i64;
        Ok(Elem((a.0 as i64 * (k.rem_euclid(n)) % n) as u32))
    }

    /// Frobenius power: a^{p^k}.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = self.n() as u64;
        let mut f = 1u64;
        for _ in 0..k {
            f = f * self.p % n;
        }
        Elem(((a.0 as u64 * f) % n) as u32)
    }

    /// Conjugation x -> x^q (Frobenius to the e-th power).
    pub fn conj(&self, a: Elem) -> Elem {
        self.frobenius(a, self.e)
    }

    /// Norm onto the subfield: a^{q+1}.
    pub fn norm(&self, a: Elem) -> Elem {
        self.pow_u(a, self.q + 1)
    }

    /// True iff a lies in the subfield GF(q).
    pub fn in_subfield(&self, a: Elem) -> bool {
        a.is_zero() || a.0 % (self.q as u32 + 1) == 0
    }

    pub fn format_elem(&self, a: Elem) -> String {
        match a.log() {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "m".to_string(),
            Some(k) => format!("m^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent polynomial arithmetic over GF(p) used as the oracle for
    /// the deterministic modulus choice. Shares no code with `FieldSpec`.
    mod poly_oracle {
        /// Multiplies two coefficient vectors over GF(p) and reduces by the
        /// monic modulus.
        fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
            let deg = modulus.len() - 1;
            let mut prod = vec![0u64; a.len() + b.len()];
            for (i, &ai) in a.iter().enumerate() {
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
            for i in (deg..prod.len()).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for k in 0..deg {
                    prod[i - deg + k] = (prod[i - deg + k] + (p - modulus[k]) * c) % p;
                }
            }
            prod.truncate(deg);
            prod
        }

        /// True iff x has multiplicative order p^deg - 1 mod the modulus.
        pub fn x_is_primitive(modulus: &[u64], p: u64) -> bool {
            let deg = modulus.len() - 1;
            let n = p.pow(deg as u32) - 1;
            let x = vec![0, 1];
            let mut cur = vec![1u64];
            let mut seen = std::collections::HashSet::new();
            for _ in 0..n {
                cur = {
                    let mut padded = cur.clone();
                    padded.resize(deg, 0);
                    padded
                };
                if cur.iter().all(|&c| c == 0) || !seen.insert(cur.clone()) {
                    return false;
                }
                cur = mul_mod(&cur, &x, modulus, p);
            }
            let mut one = vec![0u64; deg];
            one[0] = 1;
            cur.resize(deg, 0);
            cur == one
        }

        /// First primitive monic polynomial of the given degree over GF(p),
        /// coefficient tuples ordered lexicographically constant-term-first.
        pub fn smallest_primitive(p: u64, deg: usize) -> Vec<u64> {
            let mut coeffs = vec![0u64; deg];
            loop {
                let mut m = coeffs.clone();
                m.push(1);
                if x_is_primitive(&m, p) {
                    return m;
                }
                let mut pos = deg;
                loop {
                    assert!(pos > 0, "no primitive polynomial found");
                    pos -= 1;
                    coeffs[pos] += 1;
                    if coeffs[pos] < p {
                        break;
                    }
                    coeffs[pos] = 0;
                }
            }
        }
    }

    fn gf(q: u64) -> FieldSpec {
        match q {
            2 => build_field(2, 1).unwrap(),
            3 => build_field(3, 1).unwrap(),
            4 => build_field(2, 2).unwrap(),
            5 => build_field(5, 1).unwrap(),
            _ => panic!("unsupported test q"),
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_field(4, 1).unwrap_err(), FieldError::NonPrime(4));
        assert_eq!(build_field(1, 1).unwrap_err(), FieldError::NonPrime(1));
        assert!(matches!(build_field(2, 17).unwrap_err(), FieldError::FieldTooLarge { .. }));
    }

    #[test]
    fn gf4_mu_has_order_three() {
        let f = gf(2);
        assert_eq!(f.order(), 4);
        let mu = f.mu();
        assert_eq!(f.pow_u(mu, 3), Elem::ONE);
        assert_ne!(f.pow_u(mu, 1), Elem::ONE);
        assert_ne!(f.pow_u(mu, 2), Elem::ONE);
    }

    #[test]
    fn gf9_mu_has_order_eight() {
        let f = gf(3);
        assert_eq!(f.order(), 9);
        for k in 1..8 {
            assert_ne!(f.pow_u(f.mu(), k), Elem::ONE);
        }
        assert_eq!(f.pow_u(f.mu(), 8), Elem::ONE);
    }

    #[test]
    fn modulus_is_lex_smallest_primitive() {
        // Oracle recomputes the choice with independent polynomial arithmetic.
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = build_field(p, e).unwrap();
            assert_eq!(f.modulus(), poly_oracle::smallest_primitive(p, 2 * e as usize));
        }
        // Frozen values from the oracle.
        assert_eq!(build_field(2, 1).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(build_field(3, 1).unwrap().modulus(), &[2, 1, 1]);
        assert_eq!(build_field(2, 2).unwrap().modulus(), &[1, 0, 0, 1, 1]);
    }

    #[test]
    fn modulus_override_accepts_other_primitive_polynomials() {
        // x^4 + x + 1 is the other primitive quartic over GF(2).
        let f = build_field_with_modulus(2, 2, &[1, 1, 0, 0, 1]).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.pow_u(f.mu(), 15), Elem::ONE);
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5.
        assert_eq!(
            build_field_with_modulus(2, 2, &[1, 1, 1, 1, 1]).unwrap_err(),
            FieldError::NotPrimitive
        );
    }

    #[test]
    fn exp_law_holds_exhaustively() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            let n = f.order() - 1;
            for a in 0..n {
                for b in 0..n {
                    let lhs = f.mul(f.mu_pow(a as i64), f.mu_pow(b as i64));
                    assert_eq!(lhs, f.mu_pow(((a + b) % n) as i64));
                }
            }
        }
    }

    #[test]
    fn char2_addition_cancels() {
        let f = gf(2);
        for x in f.elements() {
            assert_eq!(f.add(x, x), Elem::ZERO);
        }
    }

    #[test]
    fn gf9_mu4_is_minus_one() {
        let f = gf(3);
        let mu4 = f.pow_u(f.mu(), 4);
        // mu^4 is the unique element of multiplicative order 2, so mu^4 = -1.
        assert_eq!(f.mul(mu4, mu4), Elem::ONE);
        assert_ne!(mu4, Elem::ONE);
        assert_eq!(f.add(mu4, Elem::ONE), Elem::ZERO);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            let elems: Vec<Elem> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, Elem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn division_and_errors() {
        let f = gf(3);
        assert_eq!(f.div(f.mu(), Elem::ZERO).unwrap_err(), FieldError::DivideByZero);
        assert_eq!(f.div(Elem::ZERO, f.mu()).unwrap(), Elem::ZERO);
        assert_eq!(f.pow(Elem::ZERO, -1).unwrap_err(), FieldError::DivideByZero);
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1) {
                assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
            }
        }
    }

    #[test]
    fn frobenius_is_involutive_automorphism_fixing_subfield() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for a in f.elements() {
                assert_eq!(f.frobenius(f.frobenius(a, f.e()), f.e()), a);
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(f.add(a, b), f.e()),
                        f.add(f.frobenius(a, f.e()), f.frobenius(b, f.e()))
                    );
                    assert_eq!(
                        f.frobenius(f.mul(a, b), f.e()),
                        f.mul(f.frobenius(a, f.e()), f.frobenius(b, f.e()))
                    );
                }
            }
            // Fixed points of x -> x^q are exactly the GF(q) subfield.
            let fixed = f.elements().filter(|&a| f.conj(a) == a).count() as u64;
            assert_eq!(fixed, q);
            for a in f.elements() {
                assert_eq!(f.conj(a) == a, f.in_subfield(a));
            }
        }
    }

    #[test]
    fn frobenius_of_zero_and_squaring() {
        let f = gf(2);
        assert_eq!(f.frobenius(Elem::ZERO, 1), Elem::ZERO);
        assert_eq!(f.frobenius(f.mu(), 1), f.mul(f.mu(), f.mu()));
    }

    #[test]
    fn nu_identities() {
        // q=2: nu = mu; q=3: nu = mu; q=4: nu = mu^3.
        for (q, expected_log) in [(2u64, 1u32), (3, 1), (4, 3)] {
            let f = gf(q);
            assert_eq!(f.nu().log(), Some(expected_log));
            assert_eq!(f.pow_u(f.nu(), q + 1), f.neg(Elem::ONE));
            assert_eq!(f.pow_u(f.nu(), 2 * (q + 1)), Elem::ONE);
        }
    }

    #[test]
    fn norm_maps_onto_subfield_uniformly() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            assert_eq!(f.norm(Elem::ZERO), Elem::ZERO);
            assert!(f.in_subfield(f.norm(f.mu())));
            // The norm is (q+1)-to-1 onto GF(q)* on nonzero elements.
            let mut counts = std::collections::HashMap::new();
            for a in f.elements().skip(1) {
                let na = f.norm(a);
                assert!(f.in_subfield(na) && !na.is_zero());
                *counts.entry(na).or_insert(0u64) += 1;
            }
            assert_eq!(counts.len() as u64, q - 1);
            assert!(counts.values().all(|&c| c == q + 1));
        }
    }

    #[test]
    fn element_formatting() {
        let f = gf(3);
        assert_eq!(f.format_elem(Elem::ZERO), "0");
        assert_eq!(f.format_elem(Elem::ONE), "1");
        assert_eq!(f.format_elem(f.mu()), "m");
        assert_eq!(f.format_elem(f.mu_pow(5)), "m^5");
    }
}
