use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::exact::ExactRational;

/// One displayed closed form, reproduced as printed. Ids ending in
/// `_corrected` are the repaired variants of printed forms that do not
/// match the trees they describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    JmaxPath,
    JmaxPathExpanded,
    TmeetPath,
    TmeetStar,
    JmaxStarPrinted,
    JmaxStarCorrected,
    JminPathOdd,
    JminPathEven,
    JminLeverOdd,
    JminLeverEven,
    BestmeetLever,
    JmaxBroom,
    JminDbroomOo,
    JminDbroomOe,
    JminDbroomEo,
    JminDbroomEe,
    BestmeetDbroomOo,
    BestmeetDbroomOe,
    BestmeetDbroomEo,
    BestmeetDbroomEe,
    BestmeetDbroomOeCorrected,
    JminDndMax,
    JminDndMaxCorrected,
    BestmeetPn,
    BestmeetBnPrinted,
    BestmeetBnCorrected,
    BigDeltaPlus,
    DeltaPlus,
    DeltaMinusBroom,
    DeltaMinusPath,
}

use FormulaId::*;

impl FormulaId {
    pub const ALL: [FormulaId; 30] = [
        JmaxPath,
        JmaxPathExpanded,
        TmeetPath,
        TmeetStar,
        JmaxStarPrinted,
        JmaxStarCorrected,
        JminPathOdd,
        JminPathEven,
        JminLeverOdd,
        JminLeverEven,
        BestmeetLever,
        JmaxBroom,
        JminDbroomOo,
        JminDbroomOe,
        JminDbroomEo,
        JminDbroomEe,
        BestmeetDbroomOo,
        BestmeetDbroomOe,
        BestmeetDbroomEo,
        BestmeetDbroomEe,
        BestmeetDbroomOeCorrected,
        JminDndMax,
        JminDndMaxCorrected,
        BestmeetPn,
        BestmeetBnPrinted,
        BestmeetBnCorrected,
        BigDeltaPlus,
        DeltaPlus,
        DeltaMinusBroom,
        DeltaMinusPath,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JmaxPath => "jmax_path",
            JmaxPathExpanded => "jmax_path_expanded",
            TmeetPath => "tmeet_path",
            TmeetStar => "tmeet_star",
            JmaxStarPrinted => "jmax_star_printed",
            JmaxStarCorrected => "jmax_star_corrected",
            JminPathOdd => "jmin_path_odd",
            JminPathEven => "jmin_path_even",
            JminLeverOdd => "jmin_lever_odd",
            JminLeverEven => "jmin_lever_even",
            BestmeetLever => "bestmeet_lever",
            JmaxBroom => "jmax_broom",
            JminDbroomOo => "jmin_dbroom_oo",
            JminDbroomOe => "jmin_dbroom_oe",
            JminDbroomEo => "jmin_dbroom_eo",
            JminDbroomEe => "jmin_dbroom_ee",
            BestmeetDbroomOo => "bestmeet_dbroom_oo",
            BestmeetDbroomOe => "bestmeet_dbroom_oe",
            BestmeetDbroomEo => "bestmeet_dbroom_eo",
            BestmeetDbroomEe => "bestmeet_dbroom_ee",
            BestmeetDbroomOeCorrected => "bestmeet_dbroom_oe_corrected",
            JminDndMax => "jmin_dnd_max",
            JminDndMaxCorrected => "jmin_dnd_max_corrected",
            BestmeetPn => "bestmeet_pn",
            BestmeetBnPrinted => "bestmeet_bn_printed",
            BestmeetBnCorrected => "bestmeet_bn_corrected",
            BigDeltaPlus => "big_delta_plus",
            DeltaPlus => "delta_plus",
            DeltaMinusBroom => "delta_minus_broom",
            DeltaMinusPath => "delta_minus_path",
        }
    }

    /// Whether the formula depends on `d`; the others are formulas in `n`
    /// alone and ignore the `d` argument.
    pub fn uses_d(self) -> bool {
        !matches!(
            self,
            JmaxPath
                | JmaxPathExpanded
                | TmeetPath
                | TmeetStar
                | JmaxStarPrinted
                | JmaxStarCorrected
                | JminPathOdd
                | JminPathEven
                | JminDndMax
                | JminDndMaxCorrected
                | BestmeetPn
                | BestmeetBnPrinted
                | BestmeetBnCorrected
                | DeltaMinusPath
        )
    }

    /// The stated range, as printed in error messages.
    pub fn range(self) -> &'static str {
        match self {
            JmaxPath | JmaxPathExpanded => "n >= 1",
            TmeetPath => "n >= 2",
            TmeetStar | JmaxStarPrinted | JmaxStarCorrected => "n >= 3",
            JminPathOdd => "odd n >= 1",
            JminPathEven => "even n >= 2",
            JminLeverOdd => "odd d, 2 <= d <= n - 1",
            JminLeverEven => "even d, 2 <= d <= n - 1",
            BestmeetLever | JmaxBroom | BigDeltaPlus | DeltaPlus => "2 <= d <= n - 1",
            JminDbroomOo | BestmeetDbroomOo => "odd n, odd d, 2 <= d <= n - 1",
            JminDbroomOe | BestmeetDbroomOe | BestmeetDbroomOeCorrected => "odd n, even d, 2 <= d <= n - 1",
            JminDbroomEo | BestmeetDbroomEo => "even n, odd d, 2 <= d <= n - 1",
            JminDbroomEe | BestmeetDbroomEe => "even n, even d, 2 <= d <= n - 1",
            JminDndMax | JminDndMaxCorrected | BestmeetPn | DeltaMinusPath => "n >= 3",
            BestmeetBnPrinted => "odd n >= 9",
            BestmeetBnCorrected => "odd n >= 5",
            DeltaMinusBroom => "2 <= d <= n - 2",
        }
    }

    /// The path minimum for the parity of `n`.
    pub fn jmin_path_for(n: usize) -> FormulaId {
        if n % 2 == 1 {
            JminPathOdd
        } else {
            JminPathEven
        }
    }

    pub fn jmin_lever_for(d: usize) -> FormulaId {
        if d % 2 == 1 {
            JminLeverOdd
        } else {
            JminLeverEven
        }
    }

    pub fn jmin_dbroom_for(n: usize, d: usize) -> FormulaId {
        match (n % 2 == 1, d % 2 == 1) {
            (true, true) => JminDbroomOo,
            (true, false) => JminDbroomOe,
            (false, true) => JminDbroomEo,
            (false, false) => JminDbroomEe,
        }
    }

    pub fn bestmeet_dbroom_for(n: usize, d: usize) -> FormulaId {
        match (n % 2 == 1, d % 2 == 1) {
            (true, true) => BestmeetDbroomOo,
            (true, false) => BestmeetDbroomOe,
            (false, true) => BestmeetDbroomEo,
            (false, false) => BestmeetDbroomEe,
        }
    }

    /// The repaired variant of a printed formula, if the ledger has one.
    pub fn corrected(self) -> Option<FormulaId> {
        match self {
            JmaxStarPrinted => Some(JmaxStarCorrected),
            JmaxPathExpanded => Some(JmaxPath),
            BestmeetDbroomOe => Some(BestmeetDbroomOeCorrected),
            JminDndMax => Some(JminDndMaxCorrected),
            BestmeetBnPrinted => Some(BestmeetBnCorrected),
            _ => None,
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| LedgerError::UnknownFormula(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LedgerError {
    #[error("{id} does not apply to the parities of n = {n}, d = {d}")]
    ParityMismatch { id: FormulaId, n: usize, d: usize },
    #[error("{id} is stated for {range}; got n = {n}, d = {d}")]
    OutOfStatedRange { id: FormulaId, n: usize, d: usize, range: &'static str },
    #[error("unknown formula id {0:?}")]
    UnknownFormula(String),
}

fn q(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

fn frac(num: ExactRational, den: i64) -> ExactRational {
    num / q(den)
}

/// Evaluates the formula `id` at `(n, d)` exactly as displayed.
pub fn closed_form(id: FormulaId, n: usize, d: usize) -> Result<ExactRational, LedgerError> {
    check_range(id, n, d)?;
    let nn = q(n as i64);
    let dd = q(d as i64);
    let n2 = &nn * &nn;
    let n3 = &n2 * &nn;
    let d2 = &dd * &dd;
    let d3 = &d2 * &dd;
    let one = q(1);
    let m = &nn - &one;
    let value = match id {
        JmaxPath => frac(q(4) * &m * &m * &m, 3) - frac(m.clone(), 3),
        JmaxPathExpanded => frac(q(4) * &n3 - q(4) * &n2 + q(11) * &nn, 3) - one,
        TmeetPath => frac(q(4) * &n2 - q(8) * &nn + q(3), 6),
        TmeetStar => q(2) * &nn - frac(q(7), 2),
        JmaxStarPrinted => q(2) * &n2 - frac(q(11), 2) * &nn + frac(q(7), 2),
        JmaxStarCorrected => q(4) * &n2 - q(11) * &nn + q(7),
        JminPathOdd => frac(&n3 - q(3) * &n2 + q(2) * &nn, 3),
        JminPathEven => frac(&n3 - q(3) * &n2 + q(5) * &nn, 3) - one,
        JminLeverOdd => &m + frac(&d3 - &dd, 3),
        JminLeverEven => &m + frac(&d3 - q(4) * &dd, 3),
        BestmeetLever => {
            let top = if d % 2 == 1 { &d3 - &dd } else { &d3 - q(4) * &dd };
            top / (q(6) * &m) + frac(one, 2)
        }
        JmaxBroom => jmax_broom(&nn, &dd),
        JminDbroomOo => (&dd - q(2)) * &n2 - (&d2 - q(2) * &dd) * &nn + frac(&d3 - q(3) * &d2 + q(2) * &dd, 3),
        JminDbroomOe => (&dd - q(2)) * &n2 - (&d2 - q(2) * &dd - one) * &nn + frac(&d3 - q(3) * &d2 - &dd, 3) + q(1),
        JminDbroomEo => (&dd - q(2)) * &n2 - (&d2 - q(2) * &dd - q(2)) * &nn + frac(&d3 - q(3) * &d2 - &dd, 3),
        JminDbroomEe => {
            (&dd - q(2)) * &n2 - (&d2 - q(2) * &dd - one) * &nn + frac(&d3 - q(3) * &d2 + q(2) * &dd, 3) - q(1)
        }
        BestmeetDbroomOo => {
            frac((&dd - q(2)) * &nn - &d2 + q(3) * &dd - q(2), 2)
                + (&d3 - q(6) * &d2 + q(11) * &dd - q(6)) / (q(6) * &m)
        }
        BestmeetDbroomOe => {
            frac((&dd - q(2)) * &nn - &d2 + q(3) * &dd - q(1), 2) + (&d3 - q(6) * &d2 + q(8) * &dd) / (q(2) * &m)
        }
        BestmeetDbroomOeCorrected => {
            frac((&dd - q(2)) * &nn - &d2 + q(3) * &dd - q(1), 2) + (&d3 - q(6) * &d2 + q(8) * &dd) / (q(6) * &m)
        }
        BestmeetDbroomEo => {
            frac((&dd - q(2)) * &nn - &d2 + q(3) * &dd, 2) + (&d3 - q(6) * &d2 + q(8) * &dd) / (q(6) * &m)
        }
        BestmeetDbroomEe => {
            frac((&dd - q(2)) * &nn - &d2 + q(3) * &dd - q(1), 2)
                + (&d3 - q(6) * &d2 + q(11) * &dd - q(6)) / (q(6) * &m)
        }
        JminDndMax => {
            if n.is_multiple_of(2) {
                frac(&n3 - q(3) * &n2 + q(5) * &nn - q(3), 3)
            } else if n <= 7 {
                frac(&n3 - q(3) * &n2 + q(2) * &nn, 3)
            } else {
                frac(&n3 - q(3) * &n2 + q(5) * &nn - q(24), 3)
            }
        }
        JminDndMaxCorrected => {
            if n.is_multiple_of(2) {
                frac(&n3 - q(3) * &n2 + q(5) * &nn - q(3), 3)
            } else {
                frac(&n3 - q(3) * &n2 + q(2) * &nn, 3)
            }
        }
        BestmeetPn => {
            if n.is_multiple_of(2) {
                frac(&n2 - q(2) * &nn + q(3), 6)
            } else {
                frac(&n2 - q(2) * &nn, 6)
            }
        }
        BestmeetBnPrinted => frac(&n2 - q(2) * &nn + q(3), 6) - q(4) / &m,
        BestmeetBnCorrected => (&n3 - q(3) * &n2 + q(2) * &nn - q(24)) / (q(6) * &m),
        BigDeltaPlus => q(4) * &n2 - q(4) * &nn + one,
        DeltaPlus => q(4) * (&dd - &one) * (q(2) * &nn - &dd) + one,
        DeltaMinusBroom => -q(4) * (&dd - &one) * (q(2) * &m - &dd) - one,
        DeltaMinusPath => {
            let t = q(2) * &nn - q(3);
            -(&t * &t)
        }
    };
    Ok(value)
}

fn jmax_broom(n: &ExactRational, d: &ExactRational) -> ExactRational {
    q(4) * (d - q(1)) * n * n + (q(5) - q(4) * d * d) * n + frac(q(4) * d * d * d - q(4) * d - q(3), 3)
}

fn check_range(id: FormulaId, n: usize, d: usize) -> Result<(), LedgerError> {
    let out = || Err(LedgerError::OutOfStatedRange { id, n, d, range: id.range() });
    let parity = || Err(LedgerError::ParityMismatch { id, n, d });
    let diameter_ok = d >= 2 && d < n;
    match id {
        JmaxPath | JmaxPathExpanded if n < 1 => out(),
        TmeetPath if n < 2 => out(),
        TmeetStar | JmaxStarPrinted | JmaxStarCorrected if n < 3 => out(),
        JminPathOdd if n.is_multiple_of(2) => parity(),
        JminPathEven if n % 2 == 1 => parity(),
        JminPathEven if n < 2 => out(),
        JminLeverOdd | JminLeverEven | BestmeetLever | JmaxBroom | BigDeltaPlus | DeltaPlus if !diameter_ok => out(),
        JminLeverOdd if d.is_multiple_of(2) => parity(),
        JminLeverEven if d % 2 == 1 => parity(),
        JminDbroomOo
        | JminDbroomOe
        | JminDbroomEo
        | JminDbroomEe
        | BestmeetDbroomOo
        | BestmeetDbroomOe
        | BestmeetDbroomEo
        | BestmeetDbroomEe
        | BestmeetDbroomOeCorrected => {
            if !diameter_ok {
                return out();
            }
            let case = FormulaId::jmin_dbroom_for(n, d);
            let expected = match id {
                JminDbroomOo | BestmeetDbroomOo => JminDbroomOo,
                JminDbroomOe | BestmeetDbroomOe | BestmeetDbroomOeCorrected => JminDbroomOe,
                JminDbroomEo | BestmeetDbroomEo => JminDbroomEo,
                _ => JminDbroomEe,
            };
            if case == expected {
                Ok(())
            } else {
                parity()
            }
        }
        JminDndMax | JminDndMaxCorrected | BestmeetPn | DeltaMinusPath if n < 3 => out(),
        BestmeetBnPrinted | BestmeetBnCorrected if n.is_multiple_of(2) => parity(),
        BestmeetBnPrinted if n < 9 => out(),
        BestmeetBnCorrected if n < 5 => out(),
        DeltaMinusBroom if d < 2 || d + 2 > n => out(),
        _ => Ok(()),
    }
}

/// The three elementary comparisons between broom differences at `(n, d)`:
/// `δ⁺(B_{n+1,d}) > δ⁺(B_{n,d})`, `δ⁺(B_{n,n-1}) > δ⁺(B_{n-1,n-2})` and
/// `Δ⁺(B_{n,d}) > δ⁺(B_{n,d}) > -δ⁻(B_{n,d})`.
pub fn delta_inequalities_hold(n: usize, d: usize) -> Result<bool, LedgerError> {
    if n < 4 || d < 2 || d >= n {
        return Err(LedgerError::OutOfStatedRange { id: DeltaPlus, n, d, range: "n >= 4, 2 <= d <= n - 1" });
    }
    let plus = |n, d| closed_form(DeltaPlus, n, d);
    let minus = if d + 1 == n { closed_form(DeltaMinusPath, n, d)? } else { closed_form(DeltaMinusBroom, n, d)? };
    let first = plus(n + 1, d)? > plus(n, d)?;
    let second = plus(n, n - 1)? > plus(n - 1, n - 2)?;
    let big = closed_form(BigDeltaPlus, n, d)?;
    let third = big > plus(n, d)? && plus(n, d)? > -minus;
    Ok(first && second && third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn cf(id: FormulaId, n: usize, d: usize) -> ExactRational {
        closed_form(id, n, d).unwrap()
    }

    #[test]
    fn hand_anchors() {
        assert_eq!(cf(JmaxPath, 3, 2), q(10));
        assert_eq!(cf(JmaxPath, 4, 3), q(35));
        assert_eq!(cf(JmaxBroom, 5, 3), q(76));
        assert_eq!(cf(JmaxBroom, 4, 2), q(27));
        assert_eq!(cf(JminPathOdd, 9, 8), q(168));
        assert_eq!(cf(JminDbroomOo, 7, 3), q(30));
        assert_eq!(cf(BestmeetLever, 5, 4), ratio(5, 2));
        assert_eq!(cf(DeltaPlus, 5, 3), q(57));
        assert_eq!(cf(BigDeltaPlus, 5, 3), q(81));
        assert_eq!(cf(DeltaMinusPath, 5, 4), q(-49));
        assert_eq!(cf(JmaxStarPrinted, 3, 2), q(5));
        assert_eq!(cf(JmaxStarCorrected, 3, 2), q(10));
        assert_eq!(cf(JmaxPathExpanded, 3, 2), q(34));
        assert_eq!(cf(BestmeetDbroomOo, 5, 3), ratio(3, 2));
        assert_eq!(cf(BestmeetBnCorrected, 9, 7), q(10));
        assert_eq!(cf(TmeetPath, 4, 3), ratio(35, 6));
        assert_eq!(cf(TmeetStar, 4, 2), ratio(9, 2));
    }

    #[test]
    fn differences_agree_with_broom_formula() {
        for n in 4..60 {
            for d in 2..n {
                assert_eq!(cf(BigDeltaPlus, n, d), cf(JmaxBroom, n + 1, d + 1) - cf(JmaxBroom, n, d));
                assert_eq!(cf(DeltaPlus, n, d), cf(JmaxBroom, n + 1, d) - cf(JmaxBroom, n, d));
                if d + 2 <= n {
                    assert_eq!(cf(DeltaMinusBroom, n, d), cf(JmaxBroom, n - 1, d) - cf(JmaxBroom, n, d));
                }
            }
            assert_eq!(cf(DeltaMinusPath, n, n - 1), cf(JmaxPath, n - 1, 0) - cf(JmaxPath, n, 0));
        }
    }

    #[test]
    fn range_and_parity_errors() {
        assert!(matches!(closed_form(JminLeverOdd, 8, 4), Err(LedgerError::ParityMismatch { .. })));
        assert!(matches!(closed_form(JmaxBroom, 5, 5), Err(LedgerError::OutOfStatedRange { .. })));
        assert!(matches!(closed_form(JminDbroomOo, 8, 3), Err(LedgerError::ParityMismatch { .. })));
        assert!(matches!(closed_form(BestmeetBnPrinted, 7, 5), Err(LedgerError::OutOfStatedRange { .. })));
        assert!(matches!(closed_form(DeltaMinusBroom, 5, 4), Err(LedgerError::OutOfStatedRange { .. })));
    }

    #[test]
    fn delta_inequalities() {
        assert!(delta_inequalities_hold(5, 3).unwrap());
        assert!(delta_inequalities_hold(6, 5).unwrap());
        for n in 4..=100 {
            for d in 2..n {
                assert!(delta_inequalities_hold(n, d).unwrap(), "n = {n}, d = {d}");
            }
        }
        assert!(delta_inequalities_hold(3, 2).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
        }
        assert!("nope".parse::<FormulaId>().is_err());
    }
}
