//! Finite-field arithmetic GF(p^e) via exhaustive operation tables, and the
//! projective plane PG(2, q) built from homogeneous coordinates.
//!
//! Field elements are encoded as integers in `[0, q)`: the code of a
//! polynomial c₀ + c₁x + … + c_{e−1}x^{e−1} over GF(p) is Σ cᵢ pⁱ, so 0 and 1
//! always encode the additive and multiplicative identities. The reduction
//! modulus is the lexicographically smallest monic irreducible polynomial of
//! degree e (coefficients compared low-degree-first), which keeps every table
//! reproducible without external polynomial catalogues.

use crate::family::BlockFamily;
use crate::{Error, Result};

/// Default cap on the field order q = p^e.
pub const DEFAULT_FIELD_CAP: usize = 1 << 14;

/// Deterministic trial-division primality check (desk scale).
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Writes q as p^e for prime p if possible.
pub fn prime_power_decompose(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            // p is the smallest prime factor; q is a prime power iff q = p^e.
            let mut rest = q;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            return (rest == 1).then_some((p, e));
        }
        p += 1;
    }
    Some((q, 1)) // q itself is prime
}

/// Addition and multiplication tables of GF(p^e) over element codes `[0, q)`.
#[derive(Debug, Clone)]
pub struct FieldTables {
    p: usize,
    e: u32,
    q: usize,
    /// Modulus coefficients c₀..c_{e−1} of the monic irreducible
    /// x^e + Σ cᵢ xⁱ (empty for e = 1).
    modulus: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl FieldTables {
    /// Builds GF(p^e) with the default order cap.
    pub fn build(p: usize, e: u32) -> Result<FieldTables> {
        FieldTables::build_with_cap(p, e, DEFAULT_FIELD_CAP)
    }

    pub fn build_with_cap(p: usize, e: u32, cap: usize) -> Result<FieldTables> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .ok_or(Error::FieldCapExceeded { q: usize::MAX, cap })?;
        if q > cap {
            return Err(Error::FieldCapExceeded { q, cap });
        }

        let modulus = if e == 1 { Vec::new() } else { smallest_irreducible(p, e) };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = add_codes(a, b, p, e) as u16;
                mul[a * q + b] = mul_codes(a, b, p, e, &modulus) as u16;
            }
        }
        Ok(FieldTables { p, e, q, modulus, add, mul })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Coefficients c₀..c_{e−1} of the reduction modulus (empty for e = 1).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn zero_code(&self) -> usize {
        0
    }

    pub fn one_code(&self) -> usize {
        1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    /// Multiplicative inverse of a nonzero element, by exhaustion.
    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        (0..self.q).find(|&b| self.mul(a, b) == 1)
    }
}

fn digits(code: usize, p: usize, e: u32) -> Vec<usize> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn code_of(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn add_codes(a: usize, b: usize, p: usize, e: u32) -> usize {
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    code_of(&sum, p)
}

/// Polynomial product reduced modulo x^e + Σ modulusᵢ xⁱ (coefficients mod p).
fn mul_codes(a: usize, b: usize, p: usize, e: u32, modulus: &[usize]) -> usize {
    if e == 1 {
        return (a * b) % p;
    }
    let e = e as usize;
    let da = digits(a, p, e as u32);
    let db = digits(b, p, e as u32);
    let mut prod = vec![0usize; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e ≡ −Σ modulusᵢ xⁱ
    for deg in (e..2 * e - 1).rev() {
        let coeff = prod[deg];
        if coeff == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mc) in modulus.iter().enumerate() {
            let sub = (coeff * mc) % p;
            prod[deg - e + i] = (prod[deg - e + i] + p - sub) % p;
        }
    }
    code_of(&prod[..e], p)
}

/// The lexicographically smallest monic irreducible polynomial of degree e
/// over GF(p), as its low-degree-first coefficient vector c₀..c_{e−1}.
/// Candidates are scanned in ascending code order, which is exactly the
/// low-degree-first lexicographic order.
fn smallest_irreducible(p: usize, e: u32) -> Vec<usize> {
    let count = p.pow(e);
    for code in 0..count {
        let coeffs = digits(code, p, e);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Irreducibility of the monic polynomial x^e + Σ coeffsᵢ xⁱ by trial
/// division against every monic polynomial of degree 1..=e/2.
fn is_irreducible(coeffs: &[usize], p: usize) -> bool {
    let e = coeffs.len();
    // full coefficient vector, low-first, including the leading 1
    let mut poly = coeffs.to_vec();
    poly.push(1);
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=e / 2 {
        let monic_count = p.pow(d as u32);
        for code in 0..monic_count {
            let mut divisor = digits(code, p, d as u32);
            divisor.push(1);
            if poly_divides(&divisor, &poly, p) {
                return false;
            }
        }
    }
    true
}

/// True iff `divisor` divides `poly` exactly over GF(p). Both are low-first
/// coefficient vectors with a leading (highest-index) coefficient of 1.
fn poly_divides(divisor: &[usize], poly: &[usize], p: usize) -> bool {
    let mut rem = poly.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() - 1 >= dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (i, &c) in divisor.iter().enumerate() {
                let sub = (lead * c) % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        debug_assert_eq!(*rem.last().unwrap(), 0);
        rem.pop();
        if rem.is_empty() {
            break;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// The projective plane PG(2, q): points are normalized homogeneous triples
/// (leftmost nonzero coordinate 1) in lexicographic element-code order, lines
/// are indexed by the same triples with incidence a·x + b·y + c·z = 0.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    q: usize,
    points: Vec<[u16; 3]>,
    lines: BlockFamily,
}

impl ProjectivePlane {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Homogeneous coordinates of point `i` as element codes.
    pub fn point(&self, i: usize) -> [u16; 3] {
        self.points[i]
    }

    /// The lines as a block family over point indices.
    pub fn lines(&self) -> &BlockFamily {
        &self.lines
    }

    /// Indices of the q+1 lines through a point, in canonical line order.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.lines.num_blocks())
            .filter(|&l| self.lines.block_set(l).contains(point))
            .collect()
    }
}

/// Builds PG(2, q) for a prime power q (within the default field cap).
pub fn projective_plane(q: usize) -> Result<ProjectivePlane> {
    let (p, e) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    let field = FieldTables::build(p, e)?;

    // Normalized triples in lexicographic code order:
    // (0,0,1) < (0,1,c) < (1,b,c).
    let mut points: Vec<[u16; 3]> = Vec::with_capacity(q * q + q + 1);
    points.push([0, 0, 1]);
    for c in 0..q {
        points.push([0, 1, c as u16]);
    }
    for b in 0..q {
        for c in 0..q {
            points.push([1, b as u16, c as u16]);
        }
    }

    let n = points.len();
    let mut blocks = Vec::with_capacity(n);
    for coeff in &points {
        let line: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, pt)| {
                let [a, b, c] = *coeff;
                let [x, y, z] = **pt;
                let s = field.add(
                    field.mul(a as usize, x as usize),
                    field.mul(b as usize, y as usize),
                );
                field.add(s, field.mul(c as usize, z as usize)) == 0
            })
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(line.len(), q + 1);
        blocks.push(line);
    }

    let lines = BlockFamily::new(n, blocks)?;
    Ok(ProjectivePlane { q, points, lines })
}
