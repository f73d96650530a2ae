//! Boolean functions f: F_2^n -> F_2 as packed truth tables, and both
//! Walsh transforms:
//!
//! * the signed transform `hat(f)(w) = sum_x (-1)^(f(x) + w.x)`, computed
//!   by the fast Walsh-Hadamard butterfly on the (-1)^f table;
//! * the unsigned transform `tilde(f)(w) = sum_x f(x) (-1)^(w.x)` over the
//!   raw 0/1 table.
//!
//! The two are linked by `hat(f)(0) = 2^n - 2 tilde(f)(0)` and
//! `hat(f)(w) = -2 tilde(f)(w)` for w != 0; [`hat_tilde_link_holds`] verifies the
//! link for a function, and [`spectra_linked`] for a precomputed
//! spectrum pair.

use crate::{Error, Result};

/// Cap on the domain dimension n; tables have 2^n bits, so 24 keeps the
/// largest table at 2 MiB and every spectrum value inside i32.
pub const MAX_DOMAIN_BITS: u32 = 24;

/// A Boolean function on F_2^n stored as a 2^n-bit truth table.
///
/// Bit `x` of the table is f(x) under the crate-wide LSB-first encoding
/// of domain points, so table index and domain point coincide. Values are
/// immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    table: Vec<u64>,
}

impl BooleanFunction {
    fn empty_table(n: u32) -> Result<Vec<u64>> {
        if n == 0 || n > MAX_DOMAIN_BITS {
            return Err(Error::DomainTooLarge {
                n,
                max: MAX_DOMAIN_BITS,
            });
        }
        Ok(vec![0u64; (1usize << n).div_ceil(64)])
    }

    /// The zero function on F_2^n.
    pub fn zero(n: u32) -> Result<Self> {
        Ok(BooleanFunction {
            n,
            table: Self::empty_table(n)?,
        })
    }

    /// Builds a function by evaluating `f` at every domain point.
    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for x in 0..1u32 << n {
            if f(x) {
                out.table[(x / 64) as usize] |= 1u64 << (x % 64);
            }
        }
        Ok(out)
    }

    /// The linear function x -> v.x (parity of x AND v).
    ///
    /// # Panics
    ///
    /// Panics if `v` has bits at or above position n.
    pub fn linear(n: u32, v: u32) -> Result<Self> {
        assert!(n >= 32 || v >> n == 0, "{v:#x} is not a point of F_2^{n}");
        Self::from_fn(n, |x| (x & v).count_ones() & 1 == 1)
    }

    /// Domain dimension n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Domain size 2^n.
    pub fn domain_size(&self) -> u32 {
        1 << self.n
    }

    /// f(x).
    ///
    /// # Panics
    ///
    /// Panics if `x >= 2^n`.
    pub fn get(&self, x: u32) -> bool {
        assert!(x < self.domain_size(), "point {x} outside the domain");
        self.table[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Number of ones in the truth table, wt(f).
    pub fn weight(&self) -> u32 {
        self.table.iter().map(|w| w.count_ones()).sum()
    }

    /// True iff f is the zero function.
    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&w| w == 0)
    }

    /// Pointwise XOR (the sum f + g over F_2).
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BooleanFunction { n: self.n, table })
    }

    /// Signed Walsh transform via the fast butterfly, O(n 2^n).
    pub fn walsh_hat(&self) -> WalshSpectrum {
        let size = self.domain_size() as usize;
        let mut values = vec![0i32; size];
        for (x, v) in values.iter_mut().enumerate() {
            *v = if self.get(x as u32) { -1 } else { 1 };
        }
        fwht(&mut values);
        WalshSpectrum { n: self.n, values }
    }

    /// Unsigned Walsh transform of the raw 0/1 table.
    pub fn walsh_tilde(&self) -> WalshSpectrum {
        let size = self.domain_size() as usize;
        let mut values = vec![0i32; size];
        for (x, v) in values.iter_mut().enumerate() {
            *v = i32::from(self.get(x as u32));
        }
        fwht(&mut values);
        WalshSpectrum { n: self.n, values }
    }

    /// Returns `Some(v)` iff f(x) = v.x for every x, decided from the
    /// signed spectrum: the value at v equals 2^n exactly when f is that
    /// linear form.
    pub fn linear_form(&self) -> Option<u32> {
        let full = 1i32 << self.n;
        let spectrum = self.walsh_hat();
        (0..self.domain_size()).find(|&w| spectrum.value(w) == full)
    }

    /// True iff f or its complement is a linear form, i.e. the signed
    /// spectrum reaches +-2^n somewhere.
    pub fn is_affine_equivalent_linear(&self) -> bool {
        let full = 1i32 << self.n;
        self.walsh_hat()
            .values()
            .iter()
            .any(|&v| v == full || v == -full)
    }

    /// Parses the two-line truth-table text format: `n=<int>` then 2^n
    /// characters of '0'/'1' in index order.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let n: u32 = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("header {header:?} is not n=<int>")))?;
        if n == 0 || n > MAX_DOMAIN_BITS {
            return Err(Error::DomainTooLarge {
                n,
                max: MAX_DOMAIN_BITS,
            });
        }
        let bits = lines
            .next()
            .ok_or_else(|| Error::Parse("missing table line".into()))?
            .trim();
        if bits.len() != 1 << n {
            return Err(Error::Parse(format!(
                "table has {} characters, expected {}",
                bits.len(),
                1u32 << n
            )));
        }
        let mut out = Self::zero(n)?;
        for (x, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.table[x / 64] |= 1u64 << (x % 64),
                _ => return Err(Error::Parse(format!("invalid table character {c:?}"))),
            }
        }
        Ok(out)
    }

    /// Renders the two-line truth-table text format, newline-terminated.
    pub fn to_table_text(&self) -> String {
        let mut s = String::with_capacity(self.domain_size() as usize + 16);
        s.push_str(&format!("n={}\n", self.n));
        for x in 0..self.domain_size() {
            s.push(if self.get(x) { '1' } else { '0' });
        }
        s.push('\n');
        s
    }
}

/// A full Walsh spectrum: entry at index w is the transform value at w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
}

impl WalshSpectrum {
    /// Wraps precomputed values; the length must be a power of two.
    pub fn from_values(values: Vec<i32>) -> Result<Self> {
        if values.is_empty() || !values.len().is_power_of_two() {
            return Err(Error::Parse(format!(
                "spectrum length {} is not a power of two",
                values.len()
            )));
        }
        let n = values.len().trailing_zeros();
        if n > MAX_DOMAIN_BITS {
            return Err(Error::DomainTooLarge {
                n,
                max: MAX_DOMAIN_BITS,
            });
        }
        Ok(WalshSpectrum { n, values })
    }

    /// Domain dimension n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Transform value at w.
    ///
    /// # Panics
    ///
    /// Panics if `w >= 2^n`.
    pub fn value(&self, w: u32) -> i32 {
        self.values[w as usize]
    }

    /// All values in index order.
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Parseval identity: the squares of all values sum to 2^(2n).
    pub fn parseval_holds(&self) -> bool {
        let sum: i64 = self.values.iter().map(|&v| i64::from(v) * i64::from(v)).sum();
        sum == 1i64 << (2 * self.n)
    }

    /// Renders the CSV export format: header `w,value`, one row per w in
    /// index order.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("w,value\n");
        for (w, v) in self.values.iter().enumerate() {
            s.push_str(&format!("{w},{v}\n"));
        }
        s
    }

    /// Parses the CSV export format produced by [`Self::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("w,value") => {}
            other => return Err(Error::Parse(format!("bad CSV header {other:?}"))),
        }
        let mut values = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (w, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad CSV row {line:?}")))?;
            let w: usize = w
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {w:?}")))?;
            if w != values.len() {
                return Err(Error::Parse(format!(
                    "row index {w} out of order (expected {})",
                    values.len()
                )));
            }
            let v: i32 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {v:?}")))?;
            values.push(v);
        }
        Self::from_values(values)
    }
}

/// In-place fast Walsh-Hadamard butterfly.
///
/// After the call, entry w holds `sum_x a[x] (-1)^(x.w)` of the input
/// array a. Applying the butterfly twice multiplies the input by len.
///
/// # Panics
///
/// Panics if the length is not a power of two.
pub fn fwht(values: &mut [i32]) {
    assert!(
        values.len().is_power_of_two(),
        "length {} is not a power of two",
        values.len()
    );
    let mut half = 1;
    while half < values.len() {
        for block in (0..values.len()).step_by(half * 2) {
            for i in block..block + half {
                let (a, b) = (values[i], values[i + half]);
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
        half *= 2;
    }
}

/// Checks the transform link for one function: `hat(f)(0) = 2^n - 2
/// tilde(f)(0)` and `hat(f)(w) = -2 tilde(f)(w)` for every w != 0.
///
/// This holds for every Boolean function, so a `false` signals an
/// implementation bug rather than bad input.
pub fn hat_tilde_link_holds(f: &BooleanFunction) -> bool {
    spectra_linked(&f.walsh_hat(), &f.walsh_tilde())
}

/// Checks the transform link between a signed spectrum and an unsigned
/// spectrum claimed to belong to the same function.
pub fn spectra_linked(hat: &WalshSpectrum, tilde: &WalshSpectrum) -> bool {
    if hat.n != tilde.n {
        return false;
    }
    let full = 1i32 << hat.n;
    if hat.value(0) != full - 2 * tilde.value(0) {
        return false;
    }
    (1..1u32 << hat.n).all(|w| hat.value(w) == -2 * tilde.value(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_function(rng: &mut ChaCha8Rng, n: u32) -> BooleanFunction {
        BooleanFunction::from_fn(n, |_| rng.gen::<bool>()).unwrap()
    }

    /// Direct double-summation oracle for the signed transform.
    fn walsh_hat_naive(f: &BooleanFunction, w: u32) -> i32 {
        (0..f.domain_size())
            .map(|x| {
                let sign = f.get(x) as u32 + ((x & w).count_ones() & 1);
                if sign & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    /// Direct double-summation oracle for the unsigned transform.
    fn walsh_tilde_naive(f: &BooleanFunction, w: u32) -> i32 {
        (0..f.domain_size())
            .map(|x| {
                if !f.get(x) {
                    0
                } else if (x & w).count_ones() & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    #[test]
    fn walsh_hat_of_zero_function() {
        let f = BooleanFunction::zero(6).unwrap();
        let s = f.walsh_hat();
        assert_eq!(s.value(0), 64);
        assert!((1..64).all(|w| s.value(w) == 0));
    }

    #[test]
    fn walsh_hat_of_linear_function_is_concentrated() {
        for v in [0u32, 1, 0b1010, 0b111111] {
            let f = BooleanFunction::linear(6, v).unwrap();
            let s = f.walsh_hat();
            for w in 0..64 {
                assert_eq!(s.value(w), if w == v { 64 } else { 0 });
            }
        }
    }

    #[test]
    fn walsh_tilde_trivia() {
        let zero = BooleanFunction::zero(5).unwrap();
        assert!(zero.walsh_tilde().values().iter().all(|&v| v == 0));

        let one = BooleanFunction::from_fn(5, |_| true).unwrap();
        let s = one.walsh_tilde();
        assert_eq!(s.value(0), 32);
        assert!((1..32).all(|w| s.value(w) == 0));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_function(&mut rng, 7);
            assert_eq!(f.walsh_tilde().value(0), f.weight() as i32);
        }
    }

    #[test]
    fn butterfly_matches_double_summation_exhaustively_at_n3() {
        for bits in 0..256u32 {
            let f = BooleanFunction::from_fn(3, |x| bits >> x & 1 == 1).unwrap();
            let hat = f.walsh_hat();
            let tilde = f.walsh_tilde();
            for w in 0..8 {
                assert_eq!(hat.value(w), walsh_hat_naive(&f, w));
                assert_eq!(tilde.value(w), walsh_tilde_naive(&f, w));
            }
        }
    }

    #[test]
    fn butterfly_matches_double_summation_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [4, 6, 8] {
            for _ in 0..10 {
                let f = random_function(&mut rng, n);
                let hat = f.walsh_hat();
                for w in 0..f.domain_size() {
                    assert_eq!(hat.value(w), walsh_hat_naive(&f, w), "n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn butterfly_twice_scales_by_domain_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let original: Vec<i32> = (0..64).map(|_| rng.gen_range(-100..100)).collect();
        let mut twice = original.clone();
        fwht(&mut twice);
        fwht(&mut twice);
        assert!(twice.iter().zip(&original).all(|(&t, &o)| t == 64 * o));
    }

    #[test]
    fn parseval_holds_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [4, 6, 8] {
            for _ in 0..50 {
                let f = random_function(&mut rng, n);
                assert!(f.walsh_hat().parseval_holds());
            }
        }
    }

    #[test]
    fn hat_tilde_link_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for n in [4, 6, 8, 10] {
            for _ in 0..50 {
                assert!(hat_tilde_link_holds(&random_function(&mut rng, n)));
            }
        }
        assert!(hat_tilde_link_holds(&BooleanFunction::zero(6).unwrap()));
    }

    #[test]
    fn hat_tilde_link_rejects_corrupted_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = random_function(&mut rng, 6);
        let hat = f.walsh_hat();
        let tilde = f.walsh_tilde();
        let mut corrupted = hat.values().to_vec();
        corrupted[1] += 2;
        let corrupted = WalshSpectrum::from_values(corrupted).unwrap();
        assert!(spectra_linked(&hat, &tilde));
        assert!(!spectra_linked(&corrupted, &tilde));
    }

    #[test]
    fn weight_equals_tilde_at_zero_and_hat_link() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let f = random_function(&mut rng, 8);
            let wt = f.weight() as i32;
            assert_eq!(f.walsh_tilde().value(0), wt);
            assert_eq!(f.walsh_hat().value(0), 256 - 2 * wt);
        }
    }

    #[test]
    fn xor_is_pointwise_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = random_function(&mut rng, 6);
        let g = random_function(&mut rng, 6);
        let sum = f.xor(&g).unwrap();
        for x in 0..64 {
            assert_eq!(sum.get(x), f.get(x) ^ g.get(x));
        }
        assert!(f.xor(&f).unwrap().is_zero());
        assert_eq!(f.xor(&BooleanFunction::zero(6).unwrap()).unwrap(), f);
        let h = random_function(&mut rng, 5);
        assert!(f.xor(&h).is_err());
    }

    #[test]
    fn linear_form_detection() {
        let e1 = BooleanFunction::linear(6, 0b000001).unwrap();
        assert_eq!(e1.linear_form(), Some(1));
        assert_eq!(BooleanFunction::zero(6).unwrap().linear_form(), Some(0));
        // the complement of a linear form is affine but not linear
        let complement = BooleanFunction::from_fn(6, |x| (x & 1).count_ones() & 1 == 0).unwrap();
        assert_eq!(complement.linear_form(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = random_function(&mut rng, 8);
        // a random 256-bit table is linear with probability 2^-247
        assert_eq!(f.linear_form(), None);
        assert!(!f.is_affine_equivalent_linear());
        assert!(e1.is_affine_equivalent_linear());
        assert!(complement.is_affine_equivalent_linear());
    }

    #[test]
    fn table_text_round_trip_and_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f = random_function(&mut rng, 5);
        let text = f.to_table_text();
        assert!(text.starts_with("n=5\n"));
        assert_eq!(BooleanFunction::from_table_text(&text).unwrap(), f);

        assert!(BooleanFunction::from_table_text("m=5\n0101").is_err());
        assert!(BooleanFunction::from_table_text("n=2\n010").is_err());
        assert!(BooleanFunction::from_table_text("n=2\n010x").is_err());
        assert!(BooleanFunction::from_table_text("n=30\n01").is_err());
    }

    #[test]
    fn spectrum_csv_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let s = random_function(&mut rng, 4).walsh_hat();
        let csv = s.to_csv();
        assert!(csv.starts_with("w,value\n"));
        assert_eq!(WalshSpectrum::from_csv(&csv).unwrap(), s);
        assert!(WalshSpectrum::from_csv("nope\n0,1\n").is_err());
        assert!(WalshSpectrum::from_csv("w,value\n1,4\n").is_err());
        assert!(WalshSpectrum::from_csv("w,value\n0,1\n1,2\n2,3\n").is_err());
    }
}
