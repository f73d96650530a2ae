//! Construction and weight analysis of the codes built from a function
//! family.
//!
//! The code of a family (f, g, h) on F_2^n has one coordinate per nonzero
//! point x, and codewords af(x) + bg(x) + ch(x) + w.x over all coefficient
//! bits (a, b, c) and all w. Its generator stacks the n simplex rows
//! (row i at coordinate x is bit i of x) with the three function rows, so
//! the dimension is n + 3 exactly when no nonzero combination of f, g, h
//! is linear.
//!
//! Weights are obtained two ways that the tests compare: direct enumeration
//! of all codewords, and closed-form prediction from the index-set
//! statistics (the spectra of spread-indicator sums take one of three
//! values per member, which pins every codeword weight).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boolfn::{BooleanFunction, WalshSpectrum};
use crate::gf2::{BitVector, GF2Matrix};
use crate::spread::{check_conditions, FunctionFamily, MemberLabel, PartialSpread, SetSystem};
use crate::{Error, Result};

/// Codeword enumeration cap: at most 2^16 messages.
pub const MAX_ENUM_DIMENSION: usize = 16;

/// A binary linear code given by an explicit generator matrix over
/// coordinates x = 1, ..., 2^n - 1 (increasing integer order).
#[derive(Debug, Clone)]
pub struct LinearCode {
    n: u32,
    generator: GF2Matrix,
}

impl LinearCode {
    /// Wraps an explicit generator; the column count must be 2^n - 1.
    pub fn from_generator(n: u32, generator: GF2Matrix) -> Result<Self> {
        let length = (1usize << n) - 1;
        if generator.ncols() != length {
            return Err(Error::LengthMismatch {
                left: generator.ncols(),
                right: length,
            });
        }
        Ok(LinearCode { n, generator })
    }

    /// Boolean-domain dimension n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Code length 2^n - 1.
    pub fn length(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// Generator matrix (rows need not be independent).
    pub fn generator(&self) -> &GF2Matrix {
        &self.generator
    }

    /// Code dimension, the rank of the generator.
    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }
}

/// Truth-table row of one function over the nonzero coordinates.
fn function_row(f: &BooleanFunction) -> BitVector {
    let length = (1usize << f.n()) - 1;
    let mut row = BitVector::zeros(length);
    for x in 1..=length as u32 {
        if f.get(x) {
            row.set(x as usize - 1, true);
        }
    }
    row
}

fn simplex_rows(n: u32) -> Vec<BitVector> {
    let length = (1usize << n) - 1;
    (0..n)
        .map(|i| {
            let mut row = BitVector::zeros(length);
            for x in 1..=length as u32 {
                if x >> i & 1 == 1 {
                    row.set(x as usize - 1, true);
                }
            }
            row
        })
        .collect()
}

/// Builds the (n+3)-row generator: n simplex rows followed by f, g, h.
pub fn construct_code(fam: &FunctionFamily) -> Result<LinearCode> {
    let n = fam.n();
    let mut rows = simplex_rows(n);
    for label in [MemberLabel::F, MemberLabel::G, MemberLabel::H] {
        rows.push(function_row(fam.member(label)));
    }
    LinearCode::from_generator(n, GF2Matrix::from_rows(rows)?)
}

/// Builds the single-function baseline code: n simplex rows plus the f row.
pub fn construct_generic_code(f: &BooleanFunction) -> Result<LinearCode> {
    if f.get(0) {
        return Err(Error::Precondition(
            "function must vanish at the zero vector".into(),
        ));
    }
    let mut rows = simplex_rows(f.n());
    rows.push(function_row(f));
    LinearCode::from_generator(f.n(), GF2Matrix::from_rows(rows)?)
}

/// Map from weight to multiplicity, covering every codeword once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    entries: BTreeMap<u32, u64>,
}

impl WeightDistribution {
    /// Builds a distribution from (weight, multiplicity) pairs, summing
    /// duplicates and dropping zero multiplicities.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut entries = BTreeMap::new();
        for (w, m) in pairs {
            if m > 0 {
                *entries.entry(w).or_insert(0) += m;
            }
        }
        WeightDistribution { entries }
    }

    /// Weight/multiplicity pairs in increasing weight order.
    pub fn entries(&self) -> &BTreeMap<u32, u64> {
        &self.entries
    }

    /// Multiplicity of one weight (0 if absent).
    pub fn multiplicity(&self, weight: u32) -> u64 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    /// Total number of codewords counted.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Smallest nonzero weight, if any nonzero codeword was counted.
    pub fn wt_min(&self) -> Option<u32> {
        self.entries.keys().copied().find(|&w| w > 0)
    }

    /// Largest weight, if any nonzero codeword was counted.
    pub fn wt_max(&self) -> Option<u32> {
        self.entries.keys().copied().filter(|&w| w > 0).max()
    }

    /// CSV rendering: header then one `weight,multiplicity` row per entry,
    /// ascending.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,multiplicity\n");
        for (w, m) in &self.entries {
            out.push_str(&format!("{w},{m}\n"));
        }
        out
    }

    /// Parses the CSV rendering; weights must be strictly ascending.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("weight,multiplicity") => {}
            _ => {
                return Err(Error::Parse(
                    "expected header line 'weight,multiplicity'".into(),
                ))
            }
        }
        let mut entries = BTreeMap::new();
        let mut last: Option<u32> = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (w, m) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("malformed row {line:?}")))?;
            let w: u32 = w
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            let m: u64 = m
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {m:?}")))?;
            if last.is_some_and(|prev| prev >= w) {
                return Err(Error::Parse("weights must be strictly ascending".into()));
            }
            last = Some(w);
            entries.insert(w, m);
        }
        Ok(WeightDistribution { entries })
    }
}

/// Enumerates all 2^dim codewords by Gray-code stepping over a row basis
/// of the generator (each step XORs a single row).
pub fn enumerate_weights(code: &LinearCode) -> Result<WeightDistribution> {
    let basis = code.generator.row_basis();
    let dim = basis.nrows();
    if dim > MAX_ENUM_DIMENSION {
        return Err(Error::DimensionCap {
            dim,
            cap: MAX_ENUM_DIMENSION,
        });
    }
    let mut entries = BTreeMap::new();
    let mut word = BitVector::zeros(code.length());
    *entries.entry(0u32).or_insert(0u64) += 1;
    for m in 1u64..1 << dim {
        // After this step `word` encodes the Gray code of m, so each
        // codeword is visited exactly once.
        let flip = m.trailing_zeros() as usize;
        word.xor_assign(basis.row(flip))?;
        *entries.entry(word.weight()).or_insert(0) += 1;
    }
    Ok(WeightDistribution { entries })
}

/// One audit row of the predicted weight table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PredictedRow {
    /// The member the row tracks, when it tracks one ("zero" and "simplex"
    /// rows have none).
    pub label: Option<&'static str>,
    pub weight: u32,
    pub multiplicity: u64,
}

/// The predicted weight table, one row per source term before aggregation:
/// the zero codeword, one row per member at weight v(2^t - 1), the simplex
/// block at 2^{n-1}, and two rows per member at 2^{n-1} - v and
/// 2^{n-1} + 2^t - v (v is the member's index-set size).
pub fn predicted_rows(sys: &SetSystem, n: u32) -> Result<Vec<PredictedRow>> {
    let t = sys.t();
    if n != 2 * t {
        return Err(Error::Precondition(format!(
            "n = {n} does not match 2t = {}",
            2 * t
        )));
    }
    if !check_conditions(sys).all_pass() {
        return Err(Error::Precondition(
            "set system fails the admissibility conditions".into(),
        ));
    }
    let half = 1u32 << (n - 1);
    let block = (1u64 << t) - 1;
    let nu = (1u64 << t) + 1;
    let mut rows = vec![PredictedRow {
        label: None,
        weight: 0,
        multiplicity: 1,
    }];
    let sizes: Vec<(MemberLabel, u64)> = MemberLabel::ALL
        .into_iter()
        .map(|label| (label, sys.member_index_set(label).len() as u64))
        .collect();
    for &(label, v) in &sizes {
        rows.push(PredictedRow {
            label: Some(label.name()),
            weight: v as u32 * block as u32,
            multiplicity: 1,
        });
    }
    rows.push(PredictedRow {
        label: None,
        weight: half,
        multiplicity: (1u64 << n) - 1,
    });
    for &(label, v) in &sizes {
        rows.push(PredictedRow {
            label: Some(label.name()),
            weight: half - v as u32,
            multiplicity: (nu - v) * block,
        });
    }
    for &(label, v) in &sizes {
        rows.push(PredictedRow {
            label: Some(label.name()),
            weight: half + (1 << t) - v as u32,
            multiplicity: v * block,
        });
    }
    Ok(rows)
}

/// Closed-form weight distribution: the audit rows of [`predicted_rows`]
/// aggregated by weight.
pub fn predict_weights(sys: &SetSystem, n: u32) -> Result<WeightDistribution> {
    let rows = predicted_rows(sys, n)?;
    Ok(WeightDistribution::from_pairs(
        rows.into_iter().map(|r| (r.weight, r.multiplicity)),
    ))
}

/// Closed-form spectrum of one member: with A the member's index set and
/// s = |A|, the value is 2^n - 2s(2^t - 1) at w = 0, and otherwise depends
/// only on whether the perp component of w has its index in A.
pub fn predict_walsh(
    sys: &SetSystem,
    member: MemberLabel,
    spread: &PartialSpread,
) -> Result<WalshSpectrum> {
    if sys.t() != spread.t() {
        return Err(Error::Precondition(format!(
            "set system has t = {}, spread has t = {}",
            sys.t(),
            spread.t()
        )));
    }
    let n = spread.n();
    let t = spread.t();
    let set = sys.member_index_set(member);
    let s = set.len() as i32;
    let at_zero = (1i32 << n) - 2 * s * ((1 << t) - 1);
    let inside = -(1i32 << (t + 1)) + 2 * s;
    let outside = 2 * s;
    let values = (0..1u32 << n)
        .map(|w| {
            if w == 0 {
                at_zero
            } else {
                match spread.perp_class(w) {
                    Some(i) if set.contains(&(i as u16)) => inside,
                    _ => outside,
                }
            }
        })
        .collect();
    WalshSpectrum::from_values(values)
}

/// The weight multiset read off the member spectra: each of the seven
/// members contributes (2^n - spectrum(w))/2 over all w, the simplex part
/// contributes 2^{n-1} once per nonzero w, and the zero codeword
/// contributes 0. Equals the enumerated distribution whenever the family
/// spans dimension n + 3.
pub fn spectral_weight_multiset(fam: &FunctionFamily) -> WeightDistribution {
    let n = fam.n();
    let full = 1i64 << n;
    let mut pairs: Vec<(u32, u64)> = vec![(0, 1), (1 << (n - 1), (1u64 << n) - 1)];
    for (_, member) in fam.members() {
        for &value in member.walsh_hat().values() {
            pairs.push((((full - value as i64) / 2) as u32, 1));
        }
    }
    WeightDistribution::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spread::build_family;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn canonical_family() -> (SetSystem, FunctionFamily) {
        let spread = PartialSpread::desarguesian(3).unwrap();
        let sys = SetSystem::new(3, [1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 6]).unwrap();
        let fam = build_family(&spread, &sys).unwrap();
        (sys, fam)
    }

    fn balanced_t4_family() -> (SetSystem, FunctionFamily) {
        let spread = PartialSpread::desarguesian(4).unwrap();
        let sys = SetSystem::new(4, [1, 2, 3, 5], [1, 2, 4, 6], [1, 3, 4, 7]).unwrap();
        let fam = build_family(&spread, &sys).unwrap();
        (sys, fam)
    }

    /// Enumeration by explicit message-times-generator products; the Gray
    /// walk must agree with this oracle.
    fn enumerate_naive(code: &LinearCode) -> WeightDistribution {
        let basis = code.generator().row_basis();
        let dim = basis.nrows();
        let mut pairs = Vec::new();
        for m in 0u64..1 << dim {
            let mut word = BitVector::zeros(code.length());
            for j in 0..dim {
                if m >> j & 1 == 1 {
                    word.xor_assign(basis.row(j)).unwrap();
                }
            }
            pairs.push((word.weight(), 1));
        }
        WeightDistribution::from_pairs(pairs)
    }

    #[test]
    fn canonical_code_parameters() {
        let (_, fam) = canonical_family();
        let code = construct_code(&fam).unwrap();
        assert_eq!(code.length(), 63);
        assert_eq!(code.dimension(), 9);
        assert_eq!(code.generator().nrows(), 9);
    }

    #[test]
    fn generic_code_dimensions() {
        let zero = BooleanFunction::zero(5).unwrap();
        let code = construct_generic_code(&zero).unwrap();
        assert_eq!(code.length(), 31);
        assert_eq!(code.dimension(), 5);

        // A single-point indicator is nonlinear, so the f row is new.
        let point = BooleanFunction::from_fn(5, |x| x == 7).unwrap();
        let code = construct_generic_code(&point).unwrap();
        assert_eq!(code.dimension(), 6);

        let affine = BooleanFunction::from_fn(5, |x| x.count_ones() % 2 == 0).unwrap();
        assert!(construct_generic_code(&affine).is_err());
    }

    #[test]
    fn simplex_distribution() {
        let zero = BooleanFunction::zero(6).unwrap();
        let code = construct_generic_code(&zero).unwrap();
        let dist = enumerate_weights(&code).unwrap();
        assert_eq!(
            dist,
            WeightDistribution::from_pairs([(0, 1), (32, 63)])
        );
    }

    #[test]
    fn zero_code_distribution() {
        let code = LinearCode::from_generator(4, GF2Matrix::new(15)).unwrap();
        let dist = enumerate_weights(&code).unwrap();
        assert_eq!(dist, WeightDistribution::from_pairs([(0, 1)]));
    }

    #[test]
    fn canonical_distribution_golden() {
        // Frozen from the closed-form table evaluated by hand at
        // s = (4,4,4), chi = (2,2,4,4); enumeration must reproduce it.
        let (sys, fam) = canonical_family();
        let golden = WeightDistribution::from_pairs([
            (0, 1),
            (14, 2),
            (28, 180),
            (30, 98),
            (32, 63),
            (36, 140),
            (38, 28),
        ]);
        let enumerated = enumerate_weights(&construct_code(&fam).unwrap()).unwrap();
        assert_eq!(enumerated, golden);
        assert_eq!(predict_weights(&sys, 6).unwrap(), golden);
        assert_eq!(enumerated.total(), 512);
        assert_eq!(enumerated.wt_min(), Some(14));
        assert_eq!(enumerated.wt_max(), Some(38));
    }

    #[test]
    fn balanced_t4_prediction_matches_enumeration() {
        let (sys, fam) = balanced_t4_family();
        let code = construct_code(&fam).unwrap();
        assert_eq!(code.length(), 255);
        assert_eq!(code.dimension(), 11);
        let enumerated = enumerate_weights(&code).unwrap();
        assert_eq!(enumerated, predict_weights(&sys, 8).unwrap());
        assert_eq!(enumerated.wt_min(), Some(60));
        assert_eq!(enumerated.wt_max(), Some(140));
    }

    #[test]
    fn gray_walk_matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(3..=5);
            let rows = rng.gen_range(1..=n + 2);
            let length = (1usize << n) - 1;
            let mut gen = GF2Matrix::new(length);
            for _ in 0..rows {
                let mut row = BitVector::zeros(length);
                for c in 0..length {
                    row.set(c, rng.gen_bool(0.5));
                }
                gen.push_row(row).unwrap();
            }
            let code = LinearCode::from_generator(n as u32, gen).unwrap();
            assert_eq!(
                enumerate_weights(&code).unwrap(),
                enumerate_naive(&code)
            );
        }
    }

    #[test]
    fn enumeration_cap() {
        let mut gen = GF2Matrix::new((1 << 5) - 1);
        for i in 0..17 {
            let mut row = BitVector::zeros(31);
            row.set(i, true);
            gen.push_row(row).unwrap();
        }
        let code = LinearCode::from_generator(5, gen).unwrap();
        assert!(matches!(
            enumerate_weights(&code),
            Err(Error::DimensionCap { dim: 17, cap: 16 })
        ));
    }

    #[test]
    fn predicted_rows_structure() {
        let (sys, _) = canonical_family();
        let rows = predicted_rows(&sys, 6).unwrap();
        assert_eq!(rows.len(), 23);
        let total: u64 = rows.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 512);
        assert_eq!(rows[0].weight, 0);
        let simplex = rows.iter().find(|r| r.weight == 32).unwrap();
        assert_eq!(simplex.multiplicity, 63);
    }

    #[test]
    fn predict_weights_requires_admissibility() {
        let sys = SetSystem::new(3, [1, 2], [1, 3], [2, 3]).unwrap();
        assert!(matches!(
            predict_weights(&sys, 6),
            Err(Error::Precondition(_))
        ));
        let (sys, _) = canonical_family();
        assert!(predict_weights(&sys, 8).is_err());
    }

    #[test]
    fn predicted_spectra_match_fwht() {
        let spread = PartialSpread::desarguesian(3).unwrap();
        let (sys, fam) = canonical_family();
        for (label, member) in fam.members() {
            let predicted = predict_walsh(&sys, label, &spread).unwrap();
            assert_eq!(predicted, member.walsh_hat(), "member {label}");
        }
    }

    #[test]
    fn predicted_spectra_match_fwht_t4() {
        let spread = PartialSpread::desarguesian(4).unwrap();
        let (sys, fam) = balanced_t4_family();
        for (label, member) in fam.members() {
            assert_eq!(
                predict_walsh(&sys, label, &spread).unwrap(),
                member.walsh_hat(),
                "member {label}"
            );
        }
    }

    #[test]
    fn spectral_multiset_equals_enumeration() {
        let (_, fam) = canonical_family();
        let code = construct_code(&fam).unwrap();
        assert_eq!(
            spectral_weight_multiset(&fam),
            enumerate_weights(&code).unwrap()
        );
    }

    #[test]
    fn spectral_multiset_on_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut done = 0;
        while done < 30 {
            let n = 4 + (done % 2) as u32;
            let draw = |rng: &mut ChaCha8Rng| {
                BooleanFunction::from_fn(n, |x| x != 0 && rng.gen_bool(0.5)).unwrap()
            };
            let f = draw(&mut rng);
            let g = draw(&mut rng);
            let h = draw(&mut rng);
            if [&f, &g, &h].iter().any(|u| u.is_affine_equivalent_linear()) {
                continue;
            }
            let Ok(fam) = FunctionFamily::from_functions(f, g, h) else {
                continue;
            };
            if MemberLabel::ALL
                .into_iter()
                .any(|l| fam.member(l).is_affine_equivalent_linear())
            {
                continue;
            }
            let code = construct_code(&fam).unwrap();
            assert_eq!(code.dimension(), n as usize + 3);
            assert_eq!(
                spectral_weight_multiset(&fam),
                enumerate_weights(&code).unwrap()
            );
            done += 1;
        }
    }

    #[test]
    fn weight_sum_identity() {
        // Every coordinate is nonzero on half the codewords, so the total
        // weight over the code is length * 2^{dim-1}.
        let (_, fam) = canonical_family();
        let dist = enumerate_weights(&construct_code(&fam).unwrap()).unwrap();
        let total: u64 = dist
            .entries()
            .iter()
            .map(|(&w, &m)| w as u64 * m)
            .sum();
        assert_eq!(total, 63 * (1 << 8));
    }

    #[test]
    fn distribution_csv_round_trip() {
        let (sys, _) = canonical_family();
        let dist = predict_weights(&sys, 6).unwrap();
        let csv = dist.to_csv();
        assert!(csv.starts_with("weight,multiplicity\n0,1\n"));
        assert_eq!(WeightDistribution::from_csv(&csv).unwrap(), dist);

        assert!(WeightDistribution::from_csv("w,m\n0,1\n").is_err());
        assert!(WeightDistribution::from_csv("weight,multiplicity\n5,1\n3,2\n").is_err());
        assert!(WeightDistribution::from_csv("weight,multiplicity\nx,1\n").is_err());
    }
}
