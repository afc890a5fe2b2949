//! Cyclicity of the rational-point groups of an isogeny class, globally and
//! prime by prime, together with the growth and cyclic-growth sets of a
//! Weil-central class and machine verification of the proven lower-bound
//! containments.
//!
//! The global criterion: a class with Weil polynomial `f` is cyclic exactly
//! when `gcd(f'(1), f(1)/rad(f(1))) = 1`. Its local form at a prime `l`
//! needs only the `l`-part of `f(1)/rad(f(1))`, which is
//! `max(v_l(f(1)) - 1, 0)` — no complete factorization required.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{factorize, is_prime, mult_order, valuation, ArithError, FactorBudget};
use crate::central::{extension_weil_poly, geom_sum, WeilCentralClass};
use crate::poly::WeilPolynomial;

/// Three-valued cyclicity verdict: `Unknown` is returned instead of a guess
/// whenever the radical of `f(1)` could not be pinned down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cyclicity {
    Cyclic,
    NotCyclic,
    /// The factorization of `f(1)` left this composite cofactor, so the
    /// radical is unknown.
    Unknown { residual: BigUint },
}

impl Cyclicity {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cyclicity::Cyclic => Some(true),
            Cyclicity::NotCyclic => Some(false),
            Cyclicity::Unknown { .. } => None,
        }
    }
}

/// Hypotheses of the containment statement for the growth sets, in the
/// order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// The class is ordinary: `gcd(a, p) = 1`.
    Ordinary,
    /// `l` does not divide the dimension `g`.
    PrimeAvoidsDimension,
    /// `l` does not divide `q^g` (equivalently `l` is not the characteristic),
    /// so the multiplicative order of `q^g` mod `l` exists.
    PrimeAvoidsCharacteristic,
    /// `l` does not divide `q^g - 1`.
    PrimeAvoidsUnitGroupOrder,
    /// `l` divides the base point count: `v_l(N_1) >= 1`.
    PositiveBaseValuation,
}

impl Hypothesis {
    /// How the failure reads in a report.
    pub fn failure(&self) -> &'static str {
        match self {
            Hypothesis::Ordinary => "class is not ordinary",
            Hypothesis::PrimeAvoidsDimension => "l divides g",
            Hypothesis::PrimeAvoidsCharacteristic => "l divides q",
            Hypothesis::PrimeAvoidsUnitGroupOrder => "l divides q^g - 1",
            Hypothesis::PositiveBaseValuation => "l does not divide N_1",
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::Ordinary => "class is ordinary (gcd(a, p) = 1)",
            Hypothesis::PrimeAvoidsDimension => "l does not divide g",
            Hypothesis::PrimeAvoidsCharacteristic => "l does not divide q",
            Hypothesis::PrimeAvoidsUnitGroupOrder => "l does not divide q^g - 1",
            Hypothesis::PositiveBaseValuation => "l divides N_1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicityError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("f(1) = {0} is not a positive point count")]
    NonpositivePointCount(BigInt),
    #[error("the growth bound applies to odd extension degrees only, got {0}")]
    EvenExtension(u64),
    #[error("l = {l} does not divide the base point count {n1}")]
    BaselineNotDivisible { l: BigUint, n1: BigInt },
    #[error("the class is not ordinary")]
    NotOrdinary,
    #[error("containment statement not applicable: {}", format_failed(.failed))]
    NotApplicable { failed: Vec<Hypothesis> },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn format_failed(failed: &[Hypothesis]) -> String {
    failed
        .iter()
        .map(|h| h.failure().to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Global cyclicity of the class with Weil polynomial `f`: cyclic iff
/// `gcd(f'(1), f(1)/rad(f(1))) = 1`, with `gcd(0, m) = |m|`.
///
/// Factoring `f(1)` may exhaust `budget`; the verdict is then
/// [`Cyclicity::Unknown`], never a guess.
pub fn is_cyclic_class(
    f: &WeilPolynomial,
    budget: &FactorBudget,
) -> Result<Cyclicity, CyclicityError> {
    let n1 = f.value_at_one();
    let n1_pos = positive_count(&n1)?;
    let fac = factorize(&n1_pos, budget)?;
    match fac.radical_quotient() {
        None => Ok(Cyclicity::Unknown {
            residual: fac.residual().expect("incomplete has residual").clone(),
        }),
        Some(hat) => {
            let fp1 = f.derivative_at_one().abs().to_biguint().expect("abs");
            if fp1.gcd(&hat).is_one() {
                Ok(Cyclicity::Cyclic)
            } else {
                Ok(Cyclicity::NotCyclic)
            }
        }
    }
}

/// Local cyclicity at the prime `l`: cyclic iff `l` does not divide
/// `gcd(f(1)/rad(f(1)), f'(1))`.
///
/// Only the `l`-part of the radical quotient matters, so this never needs a
/// factorization and works at any magnitude.
pub fn is_l_cyclic(f: &WeilPolynomial, l: &BigUint) -> Result<bool, CyclicityError> {
    if !is_prime(l) {
        return Err(CyclicityError::NotPrime(l.clone()));
    }
    let n1 = f.value_at_one();
    positive_count(&n1)?;
    let v = valuation(l, &n1)?;
    if v < 2 {
        return Ok(true);
    }
    let fp1 = f.derivative_at_one();
    let l_divides_fp1 = fp1.is_zero() || (fp1 % BigInt::from(l.clone())).is_zero();
    Ok(!l_divides_fp1)
}

fn positive_count(n1: &BigInt) -> Result<BigUint, CyclicityError> {
    if n1.is_positive() {
        Ok(n1.to_biguint().expect("positive"))
    } else {
        Err(CyclicityError::NonpositivePointCount(n1.clone()))
    }
}

/// Which case of the local-cyclicity trichotomy applies at `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalCase {
    /// `l` does not divide `N_1`: the `l`-primary component is trivial.
    TrivialComponent,
    /// `l` divides neither `g` nor `q^g - 1`; always `l`-cyclic.
    CoprimeDimensionAndOrder,
    /// `l` does not divide `g` but divides `q^g - 1`; cyclic iff
    /// `l^2` does not divide `N_1`.
    DividesUnitGroupOrder,
    /// `l` divides `g`; cyclic iff `l^2` does not divide `N_1`.
    DividesDimension,
}

impl LocalCase {
    pub fn label(&self) -> &'static str {
        match self {
            LocalCase::TrivialComponent => "trivial-component",
            LocalCase::CoprimeDimensionAndOrder => "coprime-dimension-and-order",
            LocalCase::DividesUnitGroupOrder => "divides-unit-group-order",
            LocalCase::DividesDimension => "divides-dimension",
        }
    }
}

/// Per-prime analysis of a Weil-central class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    pub l: BigUint,
    /// `v_l(N_1)`.
    pub v_n1: u64,
    pub case: LocalCase,
    pub l_cyclic: bool,
    /// Multiplicative order of `q^g` mod `l`; `None` when `l` is the
    /// characteristic.
    pub omega: Option<BigUint>,
}

/// Classify the class at `l` by the local-cyclicity trichotomy, using the
/// closed forms `N_1 = q^g + a + 1` and `f'(1) = g (a + 2)`.
pub fn classify_local(
    class: &WeilCentralClass,
    l: &BigUint,
    budget: &FactorBudget,
) -> Result<LocalReport, CyclicityError> {
    if !is_prime(l) {
        return Err(CyclicityError::NotPrime(l.clone()));
    }
    let n1 = class.base_point_count();
    let v = if n1.is_zero() {
        return Err(CyclicityError::NonpositivePointCount(n1));
    } else {
        valuation(l, &n1)?
    };
    let q_pow_g = BigInt::from(class.q_pow_g());
    let omega = if (class.p() % l).is_zero() {
        None
    } else {
        Some(mult_order(&q_pow_g, l, budget)?)
    };

    let l_int = BigInt::from(l.clone());
    let divides_g = (BigInt::from(class.g()) % &l_int).is_zero();
    let unit_order: BigInt = &q_pow_g - 1;
    let divides_unit_order = (unit_order % &l_int).is_zero();

    let (case, l_cyclic) = if v == 0 {
        (LocalCase::TrivialComponent, true)
    } else if divides_g {
        (LocalCase::DividesDimension, v == 1)
    } else if divides_unit_order {
        (LocalCase::DividesUnitGroupOrder, v == 1)
    } else {
        (LocalCase::CoprimeDimensionAndOrder, true)
    };

    Ok(LocalReport {
        l: l.clone(),
        v_n1: v,
        case,
        l_cyclic,
        omega,
    })
}

/// Truncated growth data of a class at a prime: which extension degrees
/// `n <= n_max` strictly increase the `l`-part of the point count, and which
/// of those extensions are additionally `l`-cyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub l: BigUint,
    pub n_max: u64,
    /// `v_l(N_1)`.
    pub base_valuation: u64,
    /// `l` does not divide `N_1`; the sets are computed against a zero
    /// baseline and should be read accordingly.
    pub baseline_trivial: bool,
    /// Members of the growth set in `[1, n_max]`, sorted; `1` is always in.
    pub g_members: Vec<u64>,
    /// Members of the cyclic-growth set; a subset of `g_members` plus `1`.
    pub c_members: Vec<u64>,
}

/// Compute both truncated sets in one sweep over `n = 2..=n_max`.
/// Extensions are evaluated in parallel; the output is ordered by `n`
/// regardless of schedule.
pub fn growth_report(
    class: &WeilCentralClass,
    l: &BigUint,
    n_max: u64,
) -> Result<GrowthReport, CyclicityError> {
    if !is_prime(l) {
        return Err(CyclicityError::NotPrime(l.clone()));
    }
    if n_max < 1 {
        return Ok(GrowthReport {
            l: l.clone(),
            n_max,
            base_valuation: 0,
            baseline_trivial: true,
            g_members: vec![],
            c_members: vec![],
        });
    }
    let base_valuation = valuation(l, &class.base_point_count())?;
    let rows: Vec<(u64, bool, bool)> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let f_n = extension_weil_poly(class, n);
            let v_n = valuation(l, &f_n.value_at_one())
                .expect("point counts of extensions are positive");
            let grows = v_n > base_valuation;
            let cyclic = grows
                && is_l_cyclic(&f_n, l).expect("l is prime and the point count is positive");
            (n, grows, cyclic)
        })
        .collect();

    let mut g_members = vec![1u64];
    let mut c_members = vec![1u64];
    for (n, grows, cyclic) in rows {
        if grows {
            g_members.push(n);
        }
        if cyclic {
            c_members.push(n);
        }
    }
    Ok(GrowthReport {
        l: l.clone(),
        n_max,
        base_valuation,
        baseline_trivial: base_valuation == 0,
        g_members,
        c_members,
    })
}

/// Truncation of the growth set: `{1} u {n <= n_max : v_l(N_n) > v_l(N_1)}`.
pub fn growth_set(
    class: &WeilCentralClass,
    l: &BigUint,
    n_max: u64,
) -> Result<Vec<u64>, CyclicityError> {
    Ok(growth_report(class, l, n_max)?.g_members)
}

/// Truncation of the cyclic-growth set: members of the growth set whose
/// extension class is `l`-cyclic, plus `1`.
pub fn cyclic_growth_set(
    class: &WeilCentralClass,
    l: &BigUint,
    n_max: u64,
) -> Result<Vec<u64>, CyclicityError> {
    Ok(growth_report(class, l, n_max)?.c_members)
}

/// Hypotheses of the containment statement that fail for `(class, l)`,
/// in checking order; empty means applicable.
pub fn failed_hypotheses(class: &WeilCentralClass, l: &BigUint) -> Vec<Hypothesis> {
    let mut failed = Vec::new();
    if !class.is_ordinary() {
        failed.push(Hypothesis::Ordinary);
    }
    let l_int = BigInt::from(l.clone());
    if (BigInt::from(class.g()) % &l_int).is_zero() {
        failed.push(Hypothesis::PrimeAvoidsDimension);
    }
    if (class.p() % l).is_zero() {
        failed.push(Hypothesis::PrimeAvoidsCharacteristic);
    } else {
        let unit_order: BigInt = BigInt::from(class.q_pow_g()) - 1;
        if (unit_order % &l_int).is_zero() {
            failed.push(Hypothesis::PrimeAvoidsUnitGroupOrder);
        }
    }
    let v = valuation(l, &class.base_point_count()).unwrap_or(0);
    if v == 0 {
        failed.push(Hypothesis::PositiveBaseValuation);
    }
    failed
}

/// The lower-bound subsets promised for the growth sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedSubsets {
    /// Multiples of `l` in `[1, n_max]` that are odd and coprime to `g`.
    pub growth: Vec<u64>,
    /// The growth subset with multiples of `omega` removed as well.
    pub cyclic_growth: Vec<u64>,
    /// Multiplicative order of `q^g` mod `l`.
    pub omega: BigUint,
}

/// Compute the promised subsets, or report which hypothesis fails.
pub fn predicted_subsets(
    class: &WeilCentralClass,
    l: &BigUint,
    n_max: u64,
    budget: &FactorBudget,
) -> Result<PredictedSubsets, CyclicityError> {
    if !is_prime(l) {
        return Err(CyclicityError::NotPrime(l.clone()));
    }
    let failed = failed_hypotheses(class, l);
    if !failed.is_empty() {
        return Err(CyclicityError::NotApplicable { failed });
    }
    let omega = mult_order(&BigInt::from(class.q_pow_g()), l, budget)?;
    let g = class.g() as u64;
    let mut growth = Vec::new();
    let mut cyclic_growth = Vec::new();
    let mut n = 0u64;
    loop {
        n += match u64::try_from(l.clone()) {
            Ok(l_small) => l_small,
            Err(_) => break, // l exceeds n_max entirely
        };
        if n > n_max {
            break;
        }
        if n % 2 == 0 || n.gcd(&g) != 1 {
            continue;
        }
        growth.push(n);
        let omega_divides = match u64::try_from(omega.clone()) {
            Ok(w) => n % w == 0,
            Err(_) => false,
        };
        if !omega_divides {
            cyclic_growth.push(n);
        }
    }
    Ok(PredictedSubsets {
        growth,
        cyclic_growth,
        omega,
    })
}

/// Outcome of checking the proven containments on truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetReport {
    pub l: BigUint,
    pub n_max: u64,
    pub base_valuation: u64,
    pub omega: BigUint,
    pub g_members: Vec<u64>,
    pub c_members: Vec<u64>,
    pub thm_g_subset: Vec<u64>,
    pub thm_c_subset: Vec<u64>,
    pub g_containment_ok: bool,
    pub c_containment_ok: bool,
    /// Witnesses of any containment violation (empty when the flags hold).
    pub g_violations: Vec<u64>,
    pub c_violations: Vec<u64>,
}

/// Verify both containments on `[1, n_max]`: every member of the predicted
/// growth subset must lie in the growth set, and likewise for the cyclic
/// sets. A violation witnesses an implementation bug (the containments are
/// proven), so it is reported with the offending `n`.
pub fn verify_containments(
    class: &WeilCentralClass,
    l: &BigUint,
    n_max: u64,
    budget: &FactorBudget,
) -> Result<SetReport, CyclicityError> {
    let predicted = predicted_subsets(class, l, n_max, budget)?;
    let report = growth_report(class, l, n_max)?;
    let g_violations: Vec<u64> = predicted
        .growth
        .iter()
        .copied()
        .filter(|n| !report.g_members.contains(n))
        .collect();
    let c_violations: Vec<u64> = predicted
        .cyclic_growth
        .iter()
        .copied()
        .filter(|n| !report.c_members.contains(n))
        .collect();
    Ok(SetReport {
        l: l.clone(),
        n_max,
        base_valuation: report.base_valuation,
        omega: predicted.omega,
        g_members: report.g_members,
        c_members: report.c_members,
        thm_g_subset: predicted.growth,
        thm_c_subset: predicted.cyclic_growth,
        g_containment_ok: g_violations.is_empty(),
        c_containment_ok: c_violations.is_empty(),
        g_violations,
        c_violations,
    })
}

/// Both sides of the growth valuation bound at an odd extension degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthBound {
    /// `v_l(N_n)`.
    pub lhs: u64,
    /// `v_l(N_1) + v_l(n * P_n(q^g))`.
    pub rhs: u64,
    pub holds: bool,
}

/// Check `v_l(N_n) >= v_l(N_1) + v_l(n * P_n(q^g))` for odd `n`, requiring
/// `l | N_1` and an ordinary class.
pub fn growth_bound_check(
    class: &WeilCentralClass,
    l: &BigUint,
    n: u64,
) -> Result<GrowthBound, CyclicityError> {
    if n % 2 == 0 {
        return Err(CyclicityError::EvenExtension(n));
    }
    if !class.is_ordinary() {
        return Err(CyclicityError::NotOrdinary);
    }
    if !is_prime(l) {
        return Err(CyclicityError::NotPrime(l.clone()));
    }
    let n1 = class.base_point_count();
    let v1 = valuation(l, &n1)?;
    if v1 == 0 {
        return Err(CyclicityError::BaselineNotDivisible {
            l: l.clone(),
            n1,
        });
    }
    let lhs = valuation(l, &BigInt::from(crate::central::point_count(class, n)))?;
    let p_n = geom_sum(&BigInt::from(class.q_pow_g()), n);
    let rhs = v1 + valuation(l, &(BigInt::from(n) * p_n))?;
    Ok(GrowthBound {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::point_count;

    fn class(a: i64, q: u64, g: u32) -> WeilCentralClass {
        WeilCentralClass::new(BigInt::from(a), BigUint::from(q), g).unwrap()
    }

    fn budget() -> FactorBudget {
        FactorBudget::default()
    }

    fn l(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn global_criterion_examples() {
        let f = class(1, 73, 1).weil_poly();
        assert_eq!(is_cyclic_class(&f, &budget()).unwrap(), Cyclicity::Cyclic);

        // f(1) = 8, f'(1) = 4, radical quotient 4
        let f = class(2, 5, 1).weil_poly();
        assert_eq!(is_cyclic_class(&f, &budget()).unwrap(), Cyclicity::NotCyclic);

        // f'(1) = 0: cyclic iff f(1) squarefree; f(1) = 4 is not
        let f = class(-2, 5, 1).weil_poly();
        assert_eq!(f.derivative_at_one(), BigInt::zero());
        assert_eq!(is_cyclic_class(&f, &budget()).unwrap(), Cyclicity::NotCyclic);
    }

    #[test]
    fn unknown_when_radical_out_of_reach() {
        // N_5 = 2073097875 factors by trial division alone, so even a zero
        // rho budget stays complete.
        let f = extension_weil_poly(&class(1, 73, 1), 5);
        assert_eq!(
            is_cyclic_class(&f, &FactorBudget::new(0)).unwrap(),
            Cyclicity::Cyclic
        );
        // Symmetric vector (Q, 1, 1) with Q chosen so that f(1) is a
        // semiprime of two 48-bit primes; a starved budget must answer
        // unknown, never a boolean.
        let p = BigUint::from(281_474_976_710_677u64);
        let q = BigUint::from(281_474_976_710_597u64);
        let n1 = BigInt::from(&p * &q);
        let base = (&n1 - 2i32).to_biguint().unwrap();
        let f = WeilPolynomial::new(base, vec![n1.clone() - 2, BigInt::one(), BigInt::one()])
            .unwrap();
        assert_eq!(f.value_at_one(), n1);
        match is_cyclic_class(&f, &FactorBudget::new(4)).unwrap() {
            Cyclicity::Unknown { residual } => assert_eq!(BigInt::from(residual), n1),
            other => panic!("expected unknown, got {other:?}"),
        }
    }

    #[test]
    fn local_criterion_examples() {
        let f = class(1, 73, 1).weil_poly();
        assert!(is_l_cyclic(&f, &l(5)).unwrap());
        assert!(is_l_cyclic(&f, &l(3)).unwrap());

        let f = class(2, 5, 1).weil_poly();
        assert!(!is_l_cyclic(&f, &l(2)).unwrap());

        assert!(matches!(
            is_l_cyclic(&f, &l(6)),
            Err(CyclicityError::NotPrime(_))
        ));
    }

    #[test]
    fn local_classification_examples() {
        let e = class(1, 73, 1);
        let rep = classify_local(&e, &l(5), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::CoprimeDimensionAndOrder);
        assert!(rep.l_cyclic);
        assert_eq!(rep.v_n1, 2);
        assert_eq!(rep.omega, Some(l(4)));

        let rep = classify_local(&e, &l(3), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::DividesUnitGroupOrder);
        assert!(rep.l_cyclic);
        assert_eq!(rep.v_n1, 1);

        let rep = classify_local(&class(2, 5, 1), &l(2), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::DividesUnitGroupOrder);
        assert!(!rep.l_cyclic);
        assert_eq!(rep.v_n1, 3);

        // trivial component: 7 does not divide 75
        let rep = classify_local(&e, &l(7), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::TrivialComponent);
        assert!(rep.l_cyclic);
        assert_eq!(rep.v_n1, 0);

        // l = p: no multiplicative order
        let rep = classify_local(&class(4, 5, 1), &l(5), &budget()).unwrap();
        assert_eq!(rep.omega, None);
        assert_eq!(rep.v_n1, 1);

        // l | g with N_1 = 345 = 3 * 5 * 23
        let rep = classify_local(&class(1, 7, 3), &l(3), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::DividesDimension);
        assert!(rep.l_cyclic);

        // l | g with v_3(N_1) = 2: N_1 = 360 = 2^3 * 3^2 * 5
        let rep = classify_local(&class(16, 7, 3), &l(3), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::DividesDimension);
        assert_eq!(rep.v_n1, 2);
        assert!(!rep.l_cyclic);

        // the trivial case wins over the trichotomy: 3 does not divide 4925
        let rep = classify_local(&class(11, 17, 3), &l(3), &budget()).unwrap();
        assert_eq!(rep.case, LocalCase::TrivialComponent);
        assert!(rep.l_cyclic);
    }

    #[test]
    fn classification_agrees_with_local_criterion() {
        let classes = [
            class(1, 73, 1),
            class(2, 5, 1),
            class(-2, 5, 1),
            class(11, 17, 3),
            class(17, 19, 3),
            class(20, 7, 6),
            class(0, 9, 2),
            class(4, 5, 1),
            class(-3, 8, 4),
        ];
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
            71, 73, 79, 83, 89, 97];
        for c in &classes {
            let f = c.weil_poly();
            for &p in &primes {
                let rep = classify_local(c, &l(p), &budget()).unwrap();
                assert_eq!(
                    rep.l_cyclic,
                    is_l_cyclic(&f, &l(p)).unwrap(),
                    "class {c}, l = {p}"
                );
            }
        }
    }

    #[test]
    fn growth_sets_of_the_running_example() {
        let e = class(1, 73, 1);
        let report = growth_report(&e, &l(5), 6).unwrap();
        assert_eq!(report.g_members, vec![1, 4, 5]);
        assert_eq!(report.c_members, vec![1, 5]);
        assert_eq!(report.base_valuation, 2);
        assert!(!report.baseline_trivial);

        assert_eq!(growth_set(&e, &l(5), 1).unwrap(), vec![1]);
        assert_eq!(cyclic_growth_set(&e, &l(5), 1).unwrap(), vec![1]);
    }

    #[test]
    fn trivial_baseline_is_flagged_and_still_computed() {
        // 7 does not divide N_1 = 75, so membership means v_7(N_n) > 0
        let e = class(1, 73, 1);
        let report = growth_report(&e, &l(7), 12).unwrap();
        assert!(report.baseline_trivial);
        assert_eq!(report.base_valuation, 0);
        for n in 2..=12u64 {
            let expected = valuation(&l(7), &BigInt::from(point_count(&e, n))).unwrap() > 0;
            assert_eq!(report.g_members.contains(&n), expected, "n = {n}");
        }
        assert!(report.g_members.starts_with(&[1]));
    }

    #[test]
    fn cyclic_growth_is_subset_of_growth() {
        for (a, q, g) in [(1i64, 73u64, 1u32), (11, 17, 3), (3, 4, 2), (0, 5, 2)] {
            let c = class(a, q, g);
            for p in [2u64, 3, 5, 7] {
                let rep = growth_report(&c, &l(p), 24).unwrap();
                for n in &rep.c_members {
                    assert!(rep.g_members.contains(n), "{c} l={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn predicted_subsets_examples() {
        let e = class(1, 73, 1);
        let s = predicted_subsets(&e, &l(5), 20, &budget()).unwrap();
        assert_eq!(s.growth, vec![5, 15]);
        assert_eq!(s.cyclic_growth, vec![5, 15]);
        assert_eq!(s.omega, l(4));

        // multiples of 2 and 3 excluded; 46, 92 are even and 69 = 3 * 23
        let c = class(17, 19, 3);
        let s = predicted_subsets(&c, &l(23), 100, &budget()).unwrap();
        assert_eq!(s.omega, l(22));
        assert_eq!(s.growth, vec![23]);
        assert_eq!(s.cyclic_growth, s.growth);

        // with omega = 20 the degree 205 = 5 * 41 survives but 123 = 3 * 41
        // and the even multiples do not
        let c = class(20, 7, 6);
        let s = predicted_subsets(&c, &l(41), 300, &budget()).unwrap();
        assert_eq!(s.omega, l(20));
        assert_eq!(s.growth, vec![41, 205, 287]);
        assert_eq!(s.cyclic_growth, vec![41, 205, 287]);
    }

    #[test]
    fn not_applicable_when_unit_group_order_divisible() {
        let e = class(1, 73, 1);
        match predicted_subsets(&e, &l(3), 10, &budget()) {
            Err(CyclicityError::NotApplicable { failed }) => {
                assert_eq!(failed, vec![Hypothesis::PrimeAvoidsUnitGroupOrder]);
            }
            other => panic!("expected not-applicable, got {other:?}"),
        }
        // l = p is flagged as the characteristic, not the unit group order
        match predicted_subsets(&class(4, 5, 1), &l(5), 10, &budget()) {
            Err(CyclicityError::NotApplicable { failed }) => {
                assert_eq!(failed, vec![Hypothesis::PrimeAvoidsCharacteristic]);
            }
            other => panic!("expected not-applicable, got {other:?}"),
        }
    }

    #[test]
    fn containments_on_published_pairs() {
        let e = class(1, 73, 1);
        let rep = verify_containments(&e, &l(5), 50, &budget()).unwrap();
        assert!(rep.g_containment_ok && rep.c_containment_ok);
        assert_eq!(rep.thm_g_subset, vec![5, 15, 25, 35, 45]);
        assert_eq!(rep.thm_c_subset, vec![5, 15, 25, 35, 45]);

        let c = class(20, 7, 6);
        let rep = verify_containments(&c, &l(41), 123, &budget()).unwrap();
        assert_eq!(rep.thm_g_subset, vec![41]);
        assert!(rep.g_containment_ok && rep.c_containment_ok);

        let c = class(11, 17, 3);
        let rep = verify_containments(&c, &l(5), 30, &budget()).unwrap();
        assert_eq!(rep.thm_g_subset, vec![5, 25]);
        assert_eq!(rep.thm_c_subset, vec![5, 25]);
        assert!(rep.g_containment_ok && rep.c_containment_ok);
    }

    #[test]
    fn growth_bound_examples() {
        let e = class(1, 73, 1);
        let b = growth_bound_check(&e, &l(5), 3).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (2, 2, true));
        let b = growth_bound_check(&e, &l(5), 5).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (3, 3, true));
        let b = growth_bound_check(&e, &l(5), 1).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (2, 2, true));

        assert!(matches!(
            growth_bound_check(&e, &l(5), 4),
            Err(CyclicityError::EvenExtension(4))
        ));
        assert!(matches!(
            growth_bound_check(&e, &l(7), 3),
            Err(CyclicityError::BaselineNotDivisible { .. })
        ));
    }

    #[test]
    fn global_equals_conjunction_of_locals() {
        for (a, q, g) in [
            (1i64, 73u64, 1u32),
            (2, 5, 1),
            (-2, 5, 1),
            (11, 17, 3),
            (17, 19, 3),
            (20, 7, 6),
            (0, 2, 2),
            (5, 9, 2),
            (-7, 11, 2),
        ] {
            let c = class(a, q, g);
            let f = c.weil_poly();
            let global = is_cyclic_class(&f, &budget()).unwrap();
            let n1 = f.value_at_one().to_biguint().unwrap();
            let fac = factorize(&n1, &budget()).unwrap();
            assert!(fac.is_complete());
            let all_local = fac
                .prime_factors()
                .all(|p| is_l_cyclic(&f, p).unwrap());
            assert_eq!(global.as_bool(), Some(all_local), "class {c}");
        }
    }

    #[test]
    fn point_counts_stay_divisible_by_the_base_l_part() {
        let c = class(1, 73, 1);
        for n in 1..=20u64 {
            let v = valuation(&l(5), &BigInt::from(point_count(&c, n))).unwrap();
            assert!(v >= 2, "n = {n}");
        }
    }
}
