//! Minimality decisions and the Ashikhmin-Barg assessment.
//!
//! A codeword x covers y when Supp(y) is contained in Supp(x); a nonzero
//! codeword is minimal when it covers no nonzero codeword other than
//! itself, and a code is minimal when all its nonzero codewords are.
//! Two independent deciders are implemented and tested against each
//! other: a brute-force scan over all ordered codeword pairs, and a
//! spectral criterion that never touches the code itself.
//!
//! The spectral criterion rests on one identity. Writing codewords of the
//! family code as pairs (phi, w) with phi a coefficient combination of
//! (f, g, h) (possibly zero) and w a linear form, the word's weight is
//! (2^n - phi_hat(w)) / 2, where the zero combination's transform is 2^n
//! at 0 and 0 elsewhere. Covering reduces to a weight equation, so
//! (phi1, w1) is covered by (phi2, w2) exactly when
//!
//!   psi_hat(w1 + w2) + phi1_hat(w1) - phi2_hat(w2) = 2^n,   psi = phi1 + phi2.
//!
//! Splitting by whether phi1 = phi2 gives the two violation families the
//! criterion scans for: a two-spectrum form within one member (which also
//! absorbs every covering involving a simplex word) and a three-spectrum
//! form across distinct members.

use std::fmt;

use serde::Serialize;

use crate::boolfn::WalshSpectrum;
use crate::code::{spectral_weight_multiset, LinearCode, WeightDistribution};
use crate::gf2::BitVector;
use crate::spread::{check_conditions, FunctionFamily, MemberLabel, SetSystem};
use crate::{Error, Result};

/// Brute-force enumeration cap: at most 2^14 codewords get pair-scanned.
pub const MAX_BRUTE_FORCE_DIMENSION: usize = 14;

/// True iff Supp(y) is contained in Supp(x), i.e. x covers y.
pub fn covers(x: &BitVector, y: &BitVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.words().iter().zip(y.words()).all(|(&xw, &yw)| yw & !xw == 0))
}

/// Decides the same relation through the weight identity: x covers y iff
/// wt(x + y) = wt(x) - wt(y). Kept as an independent oracle for `covers`.
pub fn covers_by_weight(x: &BitVector, y: &BitVector) -> Result<bool> {
    let sum = x.xor(y)?;
    Ok(i64::from(sum.weight()) == i64::from(x.weight()) - i64::from(y.weight()))
}

/// Reduced fraction wt_min / wt_max. Serializes as the string "p/q".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbRatio {
    pub numerator: u32,
    pub denominator: u32,
}

impl Serialize for AbRatio {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl AbRatio {
    /// True when the ratio is at most 1/2, so the sufficient minimality
    /// bound for binary codes gives no information.
    pub fn is_violating(&self) -> bool {
        2 * self.numerator <= self.denominator
    }
}

impl fmt::Display for AbRatio {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}/{}", self.numerator, self.denominator)
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact wt_min / wt_max of a distribution, reduced.
pub fn ab_ratio(dist: &WeightDistribution) -> Result<AbRatio> {
    let (Some(min), Some(max)) = (dist.wt_min(), dist.wt_max()) else {
        return Err(Error::Precondition(
            "weight distribution contains no nonzero weight".into(),
        ));
    };
    let g = gcd(min, max);
    Ok(AbRatio {
        numerator: min / g,
        denominator: max / g,
    })
}

/// Which decider produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    WalshCriterion,
}

/// A concrete covering pair found by the brute-force scan. Messages are
/// coefficient vectors over the generator's row basis (bit j selects basis
/// row j), so with an independent generator they decode directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub covering_message: u64,
    pub covering_weight: u32,
    pub covered_message: u64,
    pub covered_weight: u32,
}

/// Which of the scanned inequalities a criterion violation broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InequalityForm {
    /// phi1_hat(x) + phi2_hat(y) = 2^n.
    Sum,
    /// phi1_hat(x) - phi2_hat(y) = 2^n.
    Difference,
    /// phi1_hat(x + y) + phi2_hat(x) - (phi1 + phi2)_hat(y) = 2^n.
    Convolution,
}

/// First spectral-inequality hit found by the criterion scan. Condition 1
/// violations carry the Sum or Difference form, condition 2 violations the
/// Convolution form; each certifies one covering pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionViolation {
    pub condition: u8,
    pub form: InequalityForm,
    pub phi1: MemberLabel,
    pub phi2: MemberLabel,
    pub x: u32,
    pub y: u32,
}

/// Evidence attached to a non-minimal verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Witness {
    Cover(CoverWitness),
    Criterion(CriterionViolation),
}

/// Outcome of one minimality decision, with the weight extremes and the
/// Ashikhmin-Barg assessment of the same code.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub is_minimal: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    pub wt_min: u32,
    pub wt_max: u32,
    pub ab_ratio: AbRatio,
    pub ab_violating: bool,
}

/// Every codeword alongside its message over the row basis, in Gray order.
fn all_codewords(code: &LinearCode) -> Result<Vec<(u64, BitVector)>> {
    let basis = code.generator().row_basis();
    let dim = basis.nrows();
    if dim > MAX_BRUTE_FORCE_DIMENSION {
        return Err(Error::DimensionCap {
            dim,
            cap: MAX_BRUTE_FORCE_DIMENSION,
        });
    }
    let mut words = Vec::with_capacity(1 << dim);
    let mut current = BitVector::zeros(code.length());
    let mut message = 0u64;
    words.push((message, current.clone()));
    for m in 1u64..1 << dim {
        let flip = m.trailing_zeros() as usize;
        current.xor_assign(basis.row(flip))?;
        message ^= 1 << flip;
        words.push((message, current.clone()));
    }
    Ok(words)
}

/// Scans all ordered pairs of distinct nonzero codewords and reports the
/// first cover found. Distinct nonzero binary codewords are never scalar
/// multiples of each other, so any hit disproves minimality.
pub fn is_minimal_bruteforce(code: &LinearCode) -> Result<MinimalityReport> {
    let words = all_codewords(code)?;
    let dist = WeightDistribution::from_pairs(words.iter().map(|(_, w)| (w.weight(), 1)));
    let ratio = ab_ratio(&dist)?;
    let mut witness = None;
    'scan: for (mi, wi) in &words {
        if wi.is_zero() {
            continue;
        }
        for (mj, wj) in &words {
            if mi == mj || wj.is_zero() {
                continue;
            }
            if covers(wi, wj)? {
                witness = Some(Witness::Cover(CoverWitness {
                    covering_message: *mi,
                    covering_weight: wi.weight(),
                    covered_message: *mj,
                    covered_weight: wj.weight(),
                }));
                break 'scan;
            }
        }
    }
    Ok(MinimalityReport {
        is_minimal: witness.is_none(),
        method: Method::BruteForce,
        witness,
        wt_min: dist.wt_min().expect("ab_ratio checked a nonzero weight"),
        wt_max: dist.wt_max().expect("ab_ratio checked a nonzero weight"),
        ab_violating: ratio.is_violating(),
        ab_ratio: ratio,
    })
}

/// Exhaustive audit variant: counts every ordered covering pair of
/// distinct nonzero codewords instead of stopping at the first.
pub fn count_covering_pairs(code: &LinearCode) -> Result<u64> {
    let words = all_codewords(code)?;
    let mut count = 0;
    for (i, (_, wi)) in words.iter().enumerate() {
        if wi.is_zero() {
            continue;
        }
        for (j, (_, wj)) in words.iter().enumerate() {
            if i == j || wj.is_zero() {
                continue;
            }
            if covers(wi, wj)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Quantifier range of the criterion's two-spectrum condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriterionScope {
    /// Sum and Difference forms over pairs of equal members only. Each
    /// instance corresponds to one covering pair and vice versa, so this
    /// scope decides minimality exactly (the pair-scan tests enforce it).
    SameMemberPairs,
    /// Sum and Difference forms over all ordered member pairs. The added
    /// cross-member instances correspond to no covering pair, so this
    /// scope can reject a code that is in fact minimal.
    AllMemberPairs,
}

fn condition1_violation(
    n: u32,
    spectra: &[(MemberLabel, WalshSpectrum)],
    scope: CriterionScope,
) -> Option<CriterionViolation> {
    let full = 1i32 << n;
    let points = 1u32 << n;
    for &(l1, ref s1) in spectra {
        for &(l2, ref s2) in spectra {
            if scope == CriterionScope::SameMemberPairs && l1 != l2 {
                continue;
            }
            for x in 0..points {
                let vx = s1.value(x);
                for y in 0..points {
                    if x == y {
                        continue;
                    }
                    let vy = s2.value(y);
                    let form = if vx + vy == full {
                        Some(InequalityForm::Sum)
                    } else if vx - vy == full {
                        Some(InequalityForm::Difference)
                    } else {
                        None
                    };
                    if let Some(form) = form {
                        return Some(CriterionViolation {
                            condition: 1,
                            form,
                            phi1: l1,
                            phi2: l2,
                            x,
                            y,
                        });
                    }
                }
            }
        }
    }
    None
}

fn condition2_violation(n: u32, by_mask: &[Option<WalshSpectrum>; 8]) -> Option<CriterionViolation> {
    let full = 1i32 << n;
    let points = 1u32 << n;
    for l1 in MemberLabel::ALL {
        for l2 in MemberLabel::ALL {
            if l1 == l2 {
                continue;
            }
            let s1 = by_mask[l1.mask() as usize].as_ref().expect("member spectrum");
            let s2 = by_mask[l2.mask() as usize].as_ref().expect("member spectrum");
            let psi = by_mask[(l1.mask() ^ l2.mask()) as usize]
                .as_ref()
                .expect("distinct members combine to a third member");
            for x in 0..points {
                let vx = s2.value(x);
                for y in 0..points {
                    if s1.value(x ^ y) + vx - psi.value(y) == full {
                        return Some(CriterionViolation {
                            condition: 2,
                            form: InequalityForm::Convolution,
                            phi1: l1,
                            phi2: l2,
                            x,
                            y,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Decides minimality of the family code from the seven member spectra
/// alone, under the exact quantifier scope.
pub fn walsh_criterion(fam: &FunctionFamily) -> MinimalityReport {
    walsh_criterion_scoped(fam, CriterionScope::SameMemberPairs)
}

/// Scope-parameterized criterion. Condition 1 (two-spectrum forms, over
/// x != y) is scanned first, then condition 2 (three-spectrum form, over
/// all x, y, distinct members); the first violation becomes the witness.
pub fn walsh_criterion_scoped(fam: &FunctionFamily, scope: CriterionScope) -> MinimalityReport {
    let n = fam.n();
    let mut by_mask: [Option<WalshSpectrum>; 8] = Default::default();
    let mut spectra = Vec::with_capacity(7);
    for (label, member) in fam.members() {
        let spectrum = member.walsh_hat();
        by_mask[label.mask() as usize] = Some(spectrum.clone());
        spectra.push((label, spectrum));
    }
    let violation =
        condition1_violation(n, &spectra, scope).or_else(|| condition2_violation(n, &by_mask));
    // The multiset always contains the simplex block of weight 2^{n-1},
    // so the extremes and the ratio are defined even for degenerate input.
    let dist = spectral_weight_multiset(fam);
    let ratio = ab_ratio(&dist).expect("simplex block weight is nonzero");
    MinimalityReport {
        is_minimal: violation.is_none(),
        method: Method::WalshCriterion,
        witness: violation.map(Witness::Criterion),
        wt_min: dist.wt_min().expect("simplex block weight is nonzero"),
        wt_max: dist.wt_max().expect("simplex block weight is nonzero"),
        ab_violating: ratio.is_violating(),
        ab_ratio: ratio,
    }
}

/// One broken instance of the five spectral inequality properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropositionViolation {
    /// Property index, 1 through 5.
    pub property: u8,
    pub phi1: MemberLabel,
    pub phi2: MemberLabel,
    pub x: u32,
    /// Second point for the two-point properties (1, 2, 5).
    pub y: Option<u32>,
}

/// Full audit of the five properties: every violation, plus the number of
/// instances scanned per property.
#[derive(Debug, Clone, Serialize)]
pub struct PropositionReport {
    pub violations: Vec<PropositionViolation>,
    pub checked: [u64; 5],
}

impl PropositionReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn property_holds(&self, property: u8) -> bool {
        self.violations.iter().all(|v| v.property != property)
    }
}

/// Scans the five spectral inequality properties of an admissible family.
///
/// With hats denoting transforms of members and psi = phi1 + phi2:
///
///   1. phi1_hat(x) + phi2_hat(y) != 2^n        (all member pairs, x != y)
///   2. phi1_hat(x) - phi2_hat(y) != 2^n        (all member pairs, x != y)
///   3. phi1_hat(0) + phi2_hat(x) - psi_hat(x) != 2^n   (distinct members, all x)
///   4. phi1_hat(x) + phi2_hat(x) - psi_hat(0) != 2^n   (distinct members, x != 0)
///   5. phi1_hat(x+y) + phi2_hat(x) - psi_hat(y) != 2^n (distinct members, x, y != 0, x != y)
///
/// Property 3 at x = 0 reduces to a disjointness test on two member index
/// sets, and admissible systems with a disjoint member pair exist, so the
/// suite reports violations instead of asserting none occur.
pub fn proposition_suite(sys: &SetSystem, fam: &FunctionFamily) -> Result<PropositionReport> {
    let t = sys.t();
    if fam.n() != 2 * t {
        return Err(Error::Precondition(format!(
            "family domain n = {} does not match 2t = {}",
            fam.n(),
            2 * t
        )));
    }
    if fam.n() < 6 {
        return Err(Error::Precondition(
            "the property suite requires n >= 6".into(),
        ));
    }
    if !check_conditions(sys).all_pass() {
        return Err(Error::Precondition(
            "set system fails the admissibility conditions".into(),
        ));
    }
    let cap = 1usize << (t - 1);
    for (i, set) in sys.sets().into_iter().enumerate() {
        if set.len() < 2 || set.len() > cap {
            return Err(Error::Precondition(format!(
                "|A{}| = {} outside the required range 2..={cap}",
                i + 1,
                set.len()
            )));
        }
    }

    let n = fam.n();
    let full = 1i32 << n;
    let points = 1u32 << n;
    let mut by_mask: [Option<WalshSpectrum>; 8] = Default::default();
    for (label, member) in fam.members() {
        by_mask[label.mask() as usize] = Some(member.walsh_hat());
    }
    let spectrum = |label: MemberLabel| {
        by_mask[label.mask() as usize]
            .as_ref()
            .expect("member spectrum")
    };

    let mut violations = Vec::new();
    let mut checked = [0u64; 5];
    for l1 in MemberLabel::ALL {
        let s1 = spectrum(l1);
        for l2 in MemberLabel::ALL {
            let s2 = spectrum(l2);
            for x in 0..points {
                let vx = s1.value(x);
                for y in 0..points {
                    if x == y {
                        continue;
                    }
                    let vy = s2.value(y);
                    checked[0] += 1;
                    if vx + vy == full {
                        violations.push(PropositionViolation {
                            property: 1,
                            phi1: l1,
                            phi2: l2,
                            x,
                            y: Some(y),
                        });
                    }
                    checked[1] += 1;
                    if vx - vy == full {
                        violations.push(PropositionViolation {
                            property: 2,
                            phi1: l1,
                            phi2: l2,
                            x,
                            y: Some(y),
                        });
                    }
                }
            }
        }
    }
    for l1 in MemberLabel::ALL {
        for l2 in MemberLabel::ALL {
            if l1 == l2 {
                continue;
            }
            let s1 = spectrum(l1);
            let s2 = spectrum(l2);
            let psi = by_mask[(l1.mask() ^ l2.mask()) as usize]
                .as_ref()
                .expect("distinct members combine to a third member");
            let v0 = s1.value(0);
            for x in 0..points {
                checked[2] += 1;
                if v0 + s2.value(x) - psi.value(x) == full {
                    violations.push(PropositionViolation {
                        property: 3,
                        phi1: l1,
                        phi2: l2,
                        x,
                        y: None,
                    });
                }
            }
            let p0 = psi.value(0);
            for x in 1..points {
                checked[3] += 1;
                if s1.value(x) + s2.value(x) - p0 == full {
                    violations.push(PropositionViolation {
                        property: 4,
                        phi1: l1,
                        phi2: l2,
                        x,
                        y: None,
                    });
                }
            }
            for x in 1..points {
                let vx = s2.value(x);
                for y in 1..points {
                    if x == y {
                        continue;
                    }
                    checked[4] += 1;
                    if s1.value(x ^ y) + vx - psi.value(y) == full {
                        violations.push(PropositionViolation {
                            property: 5,
                            phi1: l1,
                            phi2: l2,
                            x,
                            y: Some(y),
                        });
                    }
                }
            }
        }
    }
    Ok(PropositionReport {
        violations,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BooleanFunction;
    use crate::code::{construct_code, construct_generic_code};
    use crate::gf2::GF2Matrix;
    use crate::spread::{build_family, PartialSpread};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn canonical() -> (SetSystem, FunctionFamily) {
        let spread = PartialSpread::desarguesian(3).unwrap();
        let sys = SetSystem::new(3, [1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 6]).unwrap();
        let fam = build_family(&spread, &sys).unwrap();
        (sys, fam)
    }

    fn balanced_t4() -> (SetSystem, FunctionFamily) {
        let spread = PartialSpread::desarguesian(4).unwrap();
        let sys = SetSystem::new(4, [1, 2, 3, 5], [1, 2, 4, 6], [1, 3, 4, 7]).unwrap();
        let fam = build_family(&spread, &sys).unwrap();
        (sys, fam)
    }

    fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> BitVector {
        let mut v = BitVector::zeros(len);
        for c in 0..len {
            v.set(c, rng.gen_bool(0.5));
        }
        v
    }

    fn random_valid_family(rng: &mut ChaCha8Rng, n: u32) -> Option<FunctionFamily> {
        let draw =
            |rng: &mut ChaCha8Rng| BooleanFunction::from_fn(n, |x| x != 0 && rng.gen_bool(0.5));
        let f = draw(rng).unwrap();
        let g = draw(rng).unwrap();
        let h = draw(rng).unwrap();
        let fam = FunctionFamily::from_functions(f, g, h).ok()?;
        if MemberLabel::ALL
            .into_iter()
            .any(|l| fam.member(l).is_affine_equivalent_linear())
        {
            return None;
        }
        Some(fam)
    }

    /// Codeword of (combination mask, linear form w) over coordinates
    /// x = 1, ..., 2^n - 1.
    fn member_word(fam: &FunctionFamily, mask: u8, w: u32) -> BitVector {
        let n = fam.n();
        let member = fam.combination(mask);
        let len = (1usize << n) - 1;
        let mut out = BitVector::zeros(len);
        for x in 1..=len as u32 {
            let linear = (x & w).count_ones() % 2 == 1;
            if member.get(x) ^ linear {
                out.set(x as usize - 1, true);
            }
        }
        out
    }

    /// Every criterion violation certifies a concrete covering pair; this
    /// rebuilds both codewords and checks the cover directly.
    fn assert_violation_is_cover(fam: &FunctionFamily, v: &CriterionViolation) {
        let (covered, covering) = match v.form {
            // phi_hat(x) - phi_hat(y) = 2^n: (phi, x) is covered by (phi, y).
            InequalityForm::Difference => (
                member_word(fam, v.phi1.mask(), v.x),
                member_word(fam, v.phi2.mask(), v.y),
            ),
            // phi_hat(x) + phi_hat(y) = 2^n: (phi, y) is covered by the
            // simplex word (0, x + y).
            InequalityForm::Sum => (
                member_word(fam, v.phi1.mask(), v.y),
                member_word(fam, 0, v.x ^ v.y),
            ),
            // Condition 2: (phi2, x) is covered by (phi1 + phi2, y).
            InequalityForm::Convolution => (
                member_word(fam, v.phi2.mask(), v.x),
                member_word(fam, v.phi1.mask() ^ v.phi2.mask(), v.y),
            ),
        };
        assert!(!covered.is_zero(), "covered word must be nonzero");
        assert_ne!(covered, covering, "cover must involve distinct words");
        assert!(covers(&covering, &covered).unwrap());
    }

    #[test]
    fn covering_is_a_partial_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let len = rng.gen_range(1..=70);
            let x = random_vector(&mut rng, len);
            let y = x.and(&random_vector(&mut rng, len)).unwrap();
            let z = y.and(&random_vector(&mut rng, len)).unwrap();
            // Reflexivity, and chains built by masking are nested.
            assert!(covers(&x, &x).unwrap());
            assert!(covers(&x, &y).unwrap());
            assert!(covers(&y, &z).unwrap());
            assert!(covers(&x, &z).unwrap());
            assert!(covers(&x, &BitVector::zeros(len)).unwrap());
            // Antisymmetry.
            if covers(&y, &x).unwrap() {
                assert_eq!(x, y);
            }
        }
        let a = BitVector::from_bit_str("10").unwrap();
        let b = BitVector::from_bit_str("101").unwrap();
        assert!(matches!(
            covers(&a, &b),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn weight_identity_matches_support_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for round in 0..10_000 {
            let len = rng.gen_range(1..=80);
            let x = random_vector(&mut rng, len);
            // Every third pair is a forced subset so the positive branch
            // is exercised densely.
            let y = if round % 3 == 0 {
                x.and(&random_vector(&mut rng, len)).unwrap()
            } else {
                random_vector(&mut rng, len)
            };
            assert_eq!(
                covers(&x, &y).unwrap(),
                covers_by_weight(&x, &y).unwrap()
            );
        }
    }

    #[test]
    fn simplex_code_is_minimal() {
        let zero = BooleanFunction::zero(5).unwrap();
        let code = construct_generic_code(&zero).unwrap();
        let report = is_minimal_bruteforce(&code).unwrap();
        assert!(report.is_minimal);
        assert!(report.witness.is_none());
        assert_eq!(report.method, Method::BruteForce);
        assert_eq!((report.wt_min, report.wt_max), (16, 16));
        assert_eq!(report.ab_ratio, AbRatio { numerator: 1, denominator: 1 });
        assert!(!report.ab_violating);
        assert_eq!(count_covering_pairs(&code).unwrap(), 0);
    }

    #[test]
    fn nested_support_rows_are_caught() {
        let mut r1 = BitVector::zeros(15);
        r1.set(0, true);
        let mut r2 = BitVector::zeros(15);
        r2.set(0, true);
        r2.set(1, true);
        let gen = GF2Matrix::from_rows(vec![r1, r2]).unwrap();
        let code = LinearCode::from_generator(4, gen).unwrap();
        let report = is_minimal_bruteforce(&code).unwrap();
        assert!(!report.is_minimal);
        let Some(Witness::Cover(w)) = report.witness else {
            panic!("expected a cover witness");
        };
        assert!(w.covering_weight > w.covered_weight);
        // Words: 1, 11, 10; the 11 word covers both singletons.
        assert_eq!(count_covering_pairs(&code).unwrap(), 2);
    }

    #[test]
    fn bruteforce_respects_dimension_cap() {
        let mut gen = GF2Matrix::new(31);
        for i in 0..15 {
            let mut row = BitVector::zeros(31);
            row.set(i, true);
            gen.push_row(row).unwrap();
        }
        let code = LinearCode::from_generator(5, gen).unwrap();
        assert!(matches!(
            is_minimal_bruteforce(&code),
            Err(Error::DimensionCap { dim: 15, cap: 14 })
        ));
    }

    #[test]
    fn zero_code_has_no_ratio() {
        let code = LinearCode::from_generator(4, GF2Matrix::new(15)).unwrap();
        assert!(matches!(
            is_minimal_bruteforce(&code),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ab_ratio_reduces_and_flags() {
        let dist = WeightDistribution::from_pairs([(0, 1), (14, 2), (38, 28)]);
        let ratio = ab_ratio(&dist).unwrap();
        assert_eq!(ratio, AbRatio { numerator: 7, denominator: 19 });
        assert_eq!(ratio.to_string(), "7/19");
        assert!(ratio.is_violating());

        let dist = WeightDistribution::from_pairs([(3, 1), (5, 6)]);
        let ratio = ab_ratio(&dist).unwrap();
        assert_eq!(ratio.to_string(), "3/5");
        assert!(!ratio.is_violating());

        // Boundary: exactly 1/2 gives no information, so it counts as
        // violating.
        let dist = WeightDistribution::from_pairs([(10, 1), (20, 1)]);
        assert!(ab_ratio(&dist).unwrap().is_violating());

        let empty = WeightDistribution::from_pairs([(0, 1)]);
        assert!(matches!(ab_ratio(&empty), Err(Error::Precondition(_))));
    }

    #[test]
    fn canonical_code_is_not_minimal_by_both_deciders() {
        let (_, fam) = canonical();
        let code = construct_code(&fam).unwrap();

        let brute = is_minimal_bruteforce(&code).unwrap();
        assert!(!brute.is_minimal);
        assert_eq!((brute.wt_min, brute.wt_max), (14, 38));
        assert_eq!(brute.ab_ratio.to_string(), "7/19");
        assert!(brute.ab_violating);

        let criterion = walsh_criterion(&fam);
        assert!(!criterion.is_minimal);
        assert_eq!((criterion.wt_min, criterion.wt_max), (14, 38));
        let Some(Witness::Criterion(v)) = criterion.witness else {
            panic!("expected a criterion witness");
        };
        // Condition 1 holds for this family; the covers live in the
        // three-spectrum form, first hit at the (f+g, f+h) pair, x = y = 0.
        assert_eq!(v.condition, 2);
        assert_eq!((v.phi1, v.phi2), (MemberLabel::FG, MemberLabel::FH));
        assert_eq!((v.x, v.y), (0, 0));
        assert_violation_is_cover(&fam, &v);

        // The certified cover is f+h covered by g+h at zero linear part,
        // and its mirror f+g under g+h; nothing else covers.
        let fh = member_word(&fam, MemberLabel::FH.mask(), 0);
        let gh = member_word(&fam, MemberLabel::GH.mask(), 0);
        let fg = member_word(&fam, MemberLabel::FG.mask(), 0);
        assert!(covers(&gh, &fh).unwrap());
        assert!(covers(&gh, &fg).unwrap());
        assert_eq!(count_covering_pairs(&code).unwrap(), 2);
    }

    #[test]
    fn balanced_t4_code_is_minimal_and_ab_violating() {
        let (_, fam) = balanced_t4();
        let code = construct_code(&fam).unwrap();

        let brute = is_minimal_bruteforce(&code).unwrap();
        assert!(brute.is_minimal);
        assert_eq!((brute.wt_min, brute.wt_max), (60, 140));
        assert_eq!(brute.ab_ratio.to_string(), "3/7");
        assert!(brute.ab_violating);
        assert_eq!(count_covering_pairs(&code).unwrap(), 0);

        let criterion = walsh_criterion(&fam);
        assert!(criterion.is_minimal);
        assert!(criterion.witness.is_none());
        assert_eq!((criterion.wt_min, criterion.wt_max), (60, 140));
    }

    #[test]
    fn criterion_fires_on_a_linear_member() {
        let f = BooleanFunction::from_fn(4, |x| x & 1 == 1).unwrap();
        let g = BooleanFunction::from_fn(4, |x| x & 3 == 3).unwrap();
        let h = BooleanFunction::from_fn(4, |x| x.count_ones() >= 3).unwrap();
        let fam = FunctionFamily::from_functions(f, g, h).unwrap();
        let report = walsh_criterion(&fam);
        assert!(!report.is_minimal);
        let Some(Witness::Criterion(v)) = report.witness else {
            panic!("expected a criterion witness");
        };
        assert_eq!(v.condition, 1);
    }

    #[test]
    fn criterion_matches_bruteforce_on_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut checked = 0u32;
        let mut wide_overfires = 0u32;
        while checked < 700 {
            let n = 4 + (checked % 2);
            let Some(fam) = random_valid_family(&mut rng, n) else {
                continue;
            };
            let code = construct_code(&fam).unwrap();
            assert_eq!(code.dimension(), n as usize + 3);
            let brute = is_minimal_bruteforce(&code).unwrap();
            let narrowed = walsh_criterion(&fam);
            assert_eq!(
                narrowed.is_minimal, brute.is_minimal,
                "disagreement at n = {n}, sample {checked}"
            );
            assert_eq!(narrowed.wt_min, brute.wt_min);
            assert_eq!(narrowed.wt_max, brute.wt_max);
            if let Some(Witness::Criterion(v)) = &narrowed.witness {
                assert_violation_is_cover(&fam, v);
            }
            // The widened scope must never pass a code the pair scan
            // rejects; the reverse (rejecting a minimal code through a
            // cross-member instance) does happen and is why it is not
            // the default.
            let wide = walsh_criterion_scoped(&fam, CriterionScope::AllMemberPairs);
            if wide.is_minimal {
                assert!(brute.is_minimal);
            } else if brute.is_minimal {
                wide_overfires += 1;
            }
            checked += 1;
        }
        assert!(wide_overfires > 0, "expected a cross-member false alarm");
    }

    #[test]
    fn propositions_on_the_canonical_family() {
        let (sys, fam) = canonical();
        let report = proposition_suite(&sys, &fam).unwrap();
        assert!(!report.all_pass());
        for p in [1, 2, 4, 5] {
            assert!(report.property_holds(p), "property {p}");
        }
        // Property 3 at x = 0 detects the disjoint pair of member index
        // sets (f+g tracks {4,5}, f+h tracks {3,6}), in both orders.
        assert_eq!(report.violations.len(), 2);
        assert!(report.violations.contains(&PropositionViolation {
            property: 3,
            phi1: MemberLabel::FG,
            phi2: MemberLabel::FH,
            x: 0,
            y: None,
        }));
        assert!(report.violations.contains(&PropositionViolation {
            property: 3,
            phi1: MemberLabel::FH,
            phi2: MemberLabel::FG,
            x: 0,
            y: None,
        }));
        assert!(report.checked.iter().all(|&c| c > 0));
    }

    #[test]
    fn propositions_on_the_balanced_family() {
        let (sys, fam) = balanced_t4();
        let report = proposition_suite(&sys, &fam).unwrap();
        assert!(report.all_pass(), "violations: {:?}", report.violations);
    }

    #[test]
    fn proposition_suite_preconditions() {
        // Mismatched family and system.
        let (sys, _) = canonical();
        let (_, fam4) = balanced_t4();
        assert!(matches!(
            proposition_suite(&sys, &fam4),
            Err(Error::Precondition(_))
        ));

        // Admissible system with an oversized base set (|A1| = 5 > 2^{t-1}).
        let spread = PartialSpread::desarguesian(3).unwrap();
        let big = SetSystem::new(3, [1, 2, 3, 4, 5], [1, 2, 3, 4, 6], [1, 2, 5, 7]).unwrap();
        assert!(check_conditions(&big).all_pass());
        let fam = build_family(&spread, &big).unwrap();
        assert!(matches!(
            proposition_suite(&big, &fam),
            Err(Error::Precondition(_))
        ));

        // System failing the admissibility conditions outright (every
        // pairwise intersection equals the triple intersection).
        let bad = SetSystem::new(3, [1, 2], [1, 3], [1, 4]).unwrap();
        let fam = build_family(&spread, &bad).unwrap();
        assert!(matches!(
            proposition_suite(&bad, &fam),
            Err(Error::Precondition(_))
        ));
    }
}
