//! Bit-packed GF(2) substrate: vectors of F_2^n, GF(2) linear algebra
//! (rank, dual basis), polynomial arithmetic over GF(2), and GF(2^t)
//! field arithmetic.
//!
//! Coordinate `i` of a vector is bit `i` of its packed words (LSB first),
//! so a point of F_2^n, its integer encoding, and its truth-table index
//! all coincide. Every operation is a pure function over immutable
//! values; nothing here holds interior mutability.

use crate::{Error, Result};
use std::fmt;

/// An element of F_2^len, packed LSB-first into 64-bit words.
///
/// Bits at positions >= `len` stay zero, so equality and hashing reduce
/// to word comparisons. Lengths are arbitrary: the same type holds domain
/// points of F_2^n and codewords of length 2^n - 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Vector of length `len` whose low 64 coordinates come from `value`.
    ///
    /// # Panics
    ///
    /// Panics if `value` has a bit set at position `len` or beyond.
    pub fn from_u64(len: usize, value: u64) -> Self {
        if len < 64 {
            assert_eq!(value >> len, 0, "value does not fit in {len} bits");
        }
        let mut v = Self::zeros(len);
        if !v.words.is_empty() {
            v.words[0] = value;
        }
        v
    }

    /// Parses a string of '0'/'1' characters; character `i` is coordinate `i`.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(v)
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the vector has zero coordinates.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinate `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "coordinate {i} out of range");
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Sets coordinate `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "coordinate {i} out of range");
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Hamming weight (number of nonzero coordinates).
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// True iff every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Coordinatewise XOR (addition over F_2).
    pub fn xor(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// In-place coordinatewise XOR; allocation-free for hot loops.
    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Coordinatewise AND.
    pub fn and(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(BitVector {
            len: self.len,
            words,
        })
    }

    /// Standard inner product over F_2: parity of the coordinatewise AND.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let parity: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(parity & 1 == 1)
    }

    /// Raw packed words, LSB-first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVector {
    /// Renders coordinates in index order: character `i` is coordinate `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A matrix over F_2 stored as a list of equal-length rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: Vec<BitVector>,
    ncols: usize,
}

impl GF2Matrix {
    /// Empty matrix (zero rows) with a fixed column count.
    pub fn new(ncols: usize) -> Self {
        GF2Matrix {
            rows: Vec::new(),
            ncols,
        }
    }

    /// Builds a matrix from rows; the rows must be nonempty and share a length.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::RaggedRows);
        };
        let ncols = first.len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::RaggedRows);
        }
        Ok(GF2Matrix { rows, ncols })
    }

    /// Appends a row, which must match the column count.
    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::LengthMismatch {
                left: row.len(),
                right: self.ncols,
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Row `i`.
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// All rows in order.
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Row rank over F_2 via Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<u64>> = self.rows.iter().map(|r| r.words.clone()).collect();
        rref_words(&mut work, self.ncols).len()
    }

    /// A maximal linearly independent subset of the rows, in first-seen
    /// order; the returned rows are the original rows, not reduced ones.
    pub fn row_basis(&self) -> GF2Matrix {
        let mut echelon: Vec<Vec<u64>> = Vec::new();
        let mut basis = GF2Matrix::new(self.ncols);
        for row in &self.rows {
            let mut reduced = row.words.clone();
            for e in &echelon {
                let lead = leading_bit(e).expect("echelon rows are nonzero");
                if reduced[lead / 64] >> (lead % 64) & 1 == 1 {
                    for (a, b) in reduced.iter_mut().zip(e) {
                        *a ^= b;
                    }
                }
            }
            if reduced.iter().any(|&w| w != 0) {
                echelon.push(reduced);
                basis.rows.push(row.clone());
            }
        }
        basis
    }

    /// Basis of the dual (orthogonal) subspace {w : dot(w, b) = 0 for every
    /// row b}. The input rows must be linearly independent; the output has
    /// ncols - nrows rows, with free coordinates taken in ascending order.
    pub fn dual_basis(&self) -> Result<GF2Matrix> {
        let mut work: Vec<Vec<u64>> = self.rows.iter().map(|r| r.words.clone()).collect();
        let pivots = rref_words(&mut work, self.ncols);
        if pivots.len() < self.rows.len() {
            return Err(Error::DependentRows);
        }
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut dual = GF2Matrix::new(self.ncols);
        for j in 0..self.ncols {
            if is_pivot[j] {
                continue;
            }
            let mut w = BitVector::zeros(self.ncols);
            w.set(j, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if work[i][j / 64] >> (j % 64) & 1 == 1 {
                    w.set(pc, true);
                }
            }
            dual.rows.push(w);
        }
        Ok(dual)
    }
}

/// Index of the lowest set bit across packed words.
fn leading_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

/// In-place reduced row echelon form; returns the pivot columns in order.
fn rref_words(rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let w = col / 64;
        let b = col % 64;
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][w] >> b & 1 == 1 {
                let (pivot_row, target) = if i < r {
                    let (head, tail) = rows.split_at_mut(r);
                    (&tail[0], &mut head[i])
                } else {
                    let (head, tail) = rows.split_at_mut(i);
                    (&head[r], &mut tail[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    *t ^= p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Degree of a GF(2) polynomial (position of its highest set bit), or
/// `None` for the zero polynomial.
pub fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less (XOR-convolution) product of two GF(2) polynomials.
///
/// # Panics
///
/// Panics if the product would overflow 64 coefficient bits.
pub fn poly_mul(a: u64, b: u64) -> u64 {
    if let (Some(da), Some(db)) = (poly_degree(a), poly_degree(b)) {
        assert!(da + db < 64, "product degree {da}+{db} overflows");
    }
    let mut acc = 0u64;
    let mut b_rem = b;
    let mut shift = 0;
    while b_rem != 0 {
        if b_rem & 1 == 1 {
            acc ^= a << shift;
        }
        b_rem >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of GF(2) polynomial long division `a mod m`.
///
/// # Panics
///
/// Panics if `m` is zero.
pub fn poly_rem(a: u64, m: u64) -> u64 {
    let deg_m = poly_degree(m).expect("zero modulus");
    let mut r = a;
    while let Some(deg_r) = poly_degree(r) {
        if deg_r < deg_m {
            break;
        }
        r ^= m << (deg_r - deg_m);
    }
    r
}

/// Largest polynomial degree accepted by [`is_irreducible`] and
/// [`Gf2tField::new`]; exhaustive trial division stays cheap up to here.
pub const MAX_FIELD_DEGREE: u32 = 12;

/// Irreducibility over GF(2) by exhaustive trial division: `m` of degree d
/// is reducible iff some polynomial of degree in 1..=d/2 divides it.
///
/// # Panics
///
/// Panics if `m` has degree 0 or degree above [`MAX_FIELD_DEGREE`].
pub fn is_irreducible(m: u64) -> bool {
    let d = poly_degree(m).expect("zero polynomial");
    assert!(
        (1..=MAX_FIELD_DEGREE).contains(&d),
        "degree {d} outside 1..={MAX_FIELD_DEGREE}"
    );
    if d == 1 {
        return true;
    }
    // Divisors q with 2 <= q < 2^(d/2 + 1) cover every degree in 1..=d/2;
    // reducible q cause no false negatives because any factor of q that
    // divides m is itself in range.
    (2..1u64 << (d / 2 + 1)).all(|q| poly_rem(m, q) != 0)
}

/// The finite field GF(2^t) with a fixed irreducible modulus.
///
/// Elements are integers below 2^t encoding polynomials of degree < t
/// (bit i is the coefficient of x^i). The field object carries the
/// modulus; elements stay plain `u64` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2tField {
    t: u32,
    modulus: u64,
}

impl Gf2tField {
    /// Constructs GF(2^t) from a degree-t modulus, rejecting reducible ones.
    pub fn new(t: u32, modulus: u64) -> Result<Self> {
        if !(2..=MAX_FIELD_DEGREE).contains(&t) {
            return Err(Error::FieldDegree {
                t,
                max: MAX_FIELD_DEGREE,
            });
        }
        let degree = poly_degree(modulus).unwrap_or(0);
        if degree != t {
            return Err(Error::ModulusDegree {
                expected: t,
                found: degree,
            });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { modulus });
        }
        Ok(Gf2tField { t, modulus })
    }

    /// Constructs GF(2^t) with the default modulus for t in 2..=8.
    pub fn with_default_modulus(t: u32) -> Result<Self> {
        let modulus = default_modulus(t).ok_or(Error::FieldDegree { t, max: 8 })?;
        Self::new(t, modulus)
    }

    /// Field degree t.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// The modulus polynomial.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of field elements, 2^t.
    pub fn order(&self) -> u64 {
        1 << self.t
    }

    /// Field addition (polynomial XOR).
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.order() && b < self.order());
        a ^ b
    }

    /// Field multiplication: carry-less product reduced by the modulus.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.order() && b < self.order());
        poly_rem(poly_mul(a, b), self.modulus)
    }

    /// Multiplicative inverse by exhaustive search, `None` for zero.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        (1..self.order()).find(|&b| self.mul(a, b) == 1)
    }
}

/// Default modulus for GF(2^t), t in 2..=8: the lexicographically standard
/// irreducible trinomials/pentanomial x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1,
/// x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1.
pub fn default_modulus(t: u32) -> Option<u64> {
    match t {
        2 => Some(0b111),
        3 => Some(0b1011),
        4 => Some(0b1_0011),
        5 => Some(0b10_0101),
        6 => Some(0b100_0011),
        7 => Some(0b1000_0011),
        8 => Some(0b1_0001_1011),
        _ => None,
    }
}
