//! Real primitive Dirichlet characters, realized as Kronecker symbols of
//! fundamental discriminants, together with their theta series and the
//! theta functional equations.

use crate::{Error, Result};

/// True iff d is a fundamental discriminant:
/// d = 1 (mod 4) squarefree, or d = 4 m' with m' = 2 or 3 (mod 4) squarefree.
/// d = 1 is excluded (trivial character).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let rem = d.rem_euclid(4);
    if rem == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if rem == 0 {
        let m = d / 4;
        let mr = m.rem_euclid(4);
        return (mr == 2 || mr == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Kronecker symbol (a|n) for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    // pull the sign and the even part out of n
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        // (a|2): 0 if a even, +1 if a = +-1 mod 8, -1 if a = +-3 mod 8
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    // now n is odd and positive; Jacobi-style reciprocity loop
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (d|n) with d checked fundamental.
pub fn kronecker_symbol(d: i64, n: i64) -> Result<i64> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::domain(format!("{d} is not a fundamental discriminant")));
    }
    Ok(kronecker(d, n))
}

/// All fundamental discriminants with 2 <= |d| <= bound, ascending by |d|
/// then by sign (negative first).
pub fn enumerate_fundamental_discriminants(bound: u64) -> Result<Vec<i64>> {
    if bound < 3 {
        return Err(Error::domain(format!(
            "no fundamental discriminant has |d| <= 2, bound = {bound}"
        )));
    }
    let mut out = Vec::new();
    for m in 2..=bound as i64 {
        if is_fundamental_discriminant(-m) {
            out.push(-m);
        }
        if is_fundamental_discriminant(m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// A real primitive Dirichlet character, indexed by its fundamental
/// discriminant, with the character table memoized at construction.
#[derive(Debug, Clone)]
pub struct RealPrimitiveCharacter {
    discriminant: i64,
    modulus: u64,
    parity_a: u8,
    table: Vec<i8>,
}

impl RealPrimitiveCharacter {
    pub fn new(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::domain(format!("{d} is not a fundamental discriminant")));
        }
        let modulus = d.unsigned_abs();
        let table: Vec<i8> = (0..modulus as i64).map(|n| kronecker(d, n) as i8).collect();
        Ok(RealPrimitiveCharacter {
            discriminant: d,
            modulus,
            parity_a: if d > 0 { 0 } else { 1 },
            table,
        })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// 0 for even characters (chi(-1) = 1, d > 0), 1 for odd.
    pub fn parity_a(&self) -> u8 {
        self.parity_a
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.table[n.rem_euclid(self.modulus as i64) as usize] as i64
    }
}

/// Theta series of the character at x > 0:
/// sum over all integers n of chi(n) exp(-n^2 pi x / m)  (even case), or
/// sum of n chi(n) exp(-n^2 pi x / m)                    (odd case).
pub fn theta(chi: &RealPrimitiveCharacter, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("theta requires x > 0, got {x}")));
    }
    let m = chi.modulus() as f64;
    let rate = std::f64::consts::PI * x / m;
    let odd = chi.parity_a() == 1;
    // chi(0) = 0 for m > 1, and the n and -n terms pair up identically in
    // both parities, so sum over n >= 1 and double.
    let mut sum = 0.0;
    let mut n = 1i64;
    loop {
        let nf = n as f64;
        // truncation: exponent gap to the leading n = 1 term exceeds 45
        if rate * (nf * nf - 1.0) > 45.0 {
            break;
        }
        let c = chi.eval(n);
        if c != 0 {
            let weight = if odd { nf } else { 1.0 };
            sum += c as f64 * weight * (-nf * nf * rate).exp();
        }
        n += 1;
    }
    Ok(2.0 * sum)
}

/// |theta(x) - x^(-1/2) theta(1/x)| (even) or |theta(x) - x^(-3/2) theta(1/x)|
/// (odd): the theta functional equation residual, both sides evaluated
/// independently.
pub fn functional_equation_residual(chi: &RealPrimitiveCharacter, x: f64) -> Result<f64> {
    let lhs = theta(chi, x)?;
    let power = if chi.parity_a() == 0 { -0.5 } else { -1.5 };
    let rhs = x.powf(power) * theta(chi, 1.0 / x)?;
    Ok((lhs - rhs).abs())
}
