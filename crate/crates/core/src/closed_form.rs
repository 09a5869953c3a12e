//! Closed-form infima, bounds and conjectured values for equal-area splits.
//!
//! Notation: `l(m, n)` is the infimum of the total interior cut length over all
//! divisions of the unit-side regular `n`-gon into `m` parts of equal area.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use crate::error::{domain, Result};

fn cot(x: f64) -> f64 {
    1.0 / x.tan()
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m < 1 {
        return domain(format!("part count m must be at least 1, got {m}"));
    }
    if n < 3 {
        return domain(format!("vertex count n must be at least 3, got {n}"));
    }
    Ok(())
}

fn check_area(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("area must be positive and finite, got {a}"));
    }
    Ok(())
}

/// Area of the unit-side regular `n`-gon, `(n/4) cot(pi/n)`.
pub fn polygon_area(n: usize) -> Result<f64> {
    check_mn(1, n)?;
    Ok(n as f64 / 4.0 * cot(PI / n as f64))
}

/// Proven infimum, where known: `(2,3)`, `(3,3)` and the trivial `m = 1`.
pub fn exact_infimum(m: usize, n: usize) -> Result<Option<f64>> {
    check_mn(m, n)?;
    Ok(match (m, n) {
        (1, _) => Some(0.0),
        (2, 3) => Some((3f64.sqrt() * PI / 12.0).sqrt()),
        (3, 3) => Some(3f64.sqrt() / 2.0),
        _ => None,
    })
}

/// Isoperimetric lower bound `max(0, (sqrt(m n pi cot(pi/n)) - n) / 2)`.
pub fn lower_bound(m: usize, n: usize) -> Result<f64> {
    check_mn(m, n)?;
    let raw = 0.5 * ((m as f64 * n as f64 * PI * cot(PI / n as f64)).sqrt() - n as f64);
    Ok(raw.max(0.0))
}

/// Constants bracketing `lim l(m,n) / sqrt(m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBracket {
    pub lower_const: f64,
    pub upper_const: f64,
}

pub fn asymptotic_bracket(n: usize) -> Result<AsymptoticBracket> {
    check_mn(1, n)?;
    let c = n as f64 * cot(PI / n as f64);
    Ok(AsymptoticBracket {
        lower_const: 0.5 * (PI * c).sqrt(),
        upper_const: (3f64.sqrt() / 2.0 * c).sqrt(),
    })
}

/// Shortest cut enclosing area `A` in a corner of angle pi/3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorMinimum {
    pub radius: f64,
    pub length: f64,
}

pub fn sector_minimum(area: f64) -> Result<SectorMinimum> {
    check_area(area)?;
    Ok(SectorMinimum {
        radius: (6.0 * area / PI).sqrt(),
        length: (2.0 * area * PI / 3.0).sqrt(),
    })
}

/// Shortest arc cutting area `A` off a straight edge: a semicircle, `r = d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentMinimum {
    pub r: f64,
    pub d: f64,
    pub length: f64,
}

pub fn chord_segment_minimum(area: f64) -> Result<SegmentMinimum> {
    check_area(area)?;
    let r = (2.0 * area / PI).sqrt();
    Ok(SegmentMinimum {
        r,
        d: r,
        length: (2.0 * area * PI).sqrt(),
    })
}

/// Perimeter of the circle of area `A`.
pub fn circle_isoperimetric_length(area: f64) -> Result<f64> {
    check_area(area)?;
    Ok(2.0 * (PI * area).sqrt())
}

/// Regular simplex in `dim` dimensions with the given edge length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexSpec {
    dim: usize,
    edge: f64,
}

impl SimplexSpec {
    pub fn new(dim: usize, edge: f64) -> Result<Self> {
        if dim < 1 {
            return domain("simplex dimension must be at least 1");
        }
        if !(edge > 0.0 && edge.is_finite()) {
            return domain(format!("simplex edge must be positive, got {edge}"));
        }
        Ok(Self { dim, edge })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge(&self) -> f64 {
        self.edge
    }
}

/// Sum of distances from any interior point to the facets of a regular simplex.
pub fn simplex_distance_sum(spec: &SimplexSpec) -> f64 {
    let n = spec.dim as f64;
    ((n + 1.0) / (2.0 * n)).sqrt() * spec.edge
}

/// Which closed-form expression a conjecture entry evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// `sqrt(3 sqrt(3) pi / 8)` for `(4,3)`.
    FourThreeCornerArcs,
    /// `sqrt(sqrt(3) pi)/2 + (3/2)(sqrt(3) - sqrt(sqrt(3)/pi))` for `(6,3)`.
    SixThreeMedianArcs,
    /// `5/3` for `(3,4)`.
    ThreeFourT,
    /// `2` for `(4,4)`.
    FourFourCross,
    /// `n sqrt(1/(n+1)) + (n/2)(cos(pi/n) - sqrt(1/(n+1))) csc(pi/n)` for `(n+1, n)`.
    AnnulusFamily,
}

impl FormulaId {
    pub fn name(&self) -> &'static str {
        match self {
            FormulaId::FourThreeCornerArcs => "l43-corner-arcs",
            FormulaId::SixThreeMedianArcs => "l63-median-arcs",
            FormulaId::ThreeFourT => "l34-t-split",
            FormulaId::FourFourCross => "l44-cross",
            FormulaId::AnnulusFamily => "annulus-family",
        }
    }
}

/// A conjectured (not proven) value of `l(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjecture {
    pub m: usize,
    pub n: usize,
    pub value: f64,
    pub formula: FormulaId,
    /// Always false: these values are upper bounds conjectured to be tight.
    pub proven: bool,
    /// A second known expression for the same `(m, n)` that disagrees with `value`.
    pub disagreeing_value: Option<f64>,
}

/// The alternative `(6,3)` expression, `sqrt(3 pi)/2 + sqrt(3) - sqrt(3 sqrt(3)/pi)/2`.
pub fn six_three_alternative() -> f64 {
    let s3 = 3f64.sqrt();
    0.5 * (3.0 * PI).sqrt() + s3 - 0.5 * (3.0 * s3 / PI).sqrt()
}

/// The `(n+1, n)` annulus family value.
pub fn annulus_family(n: usize) -> Result<f64> {
    check_mn(1, n)?;
    let nf = n as f64;
    let s = (1.0 / (nf + 1.0)).sqrt();
    let a = PI / nf;
    Ok(nf * s + nf / 2.0 * (a.cos() - s) / a.sin())
}

/// Conjectured values: the four fixed entries plus the annulus family for each
/// `n` in `family`.
pub fn conjecture_table(family: RangeInclusive<usize>) -> Vec<Conjecture> {
    let s3 = 3f64.sqrt();
    let entry = |m, n, value, formula| Conjecture {
        m,
        n,
        value,
        formula,
        proven: false,
        disagreeing_value: None,
    };
    let mut table = vec![
        entry(
            4,
            3,
            (3.0 * s3 * PI / 8.0).sqrt(),
            FormulaId::FourThreeCornerArcs,
        ),
        Conjecture {
            disagreeing_value: Some(six_three_alternative()),
            ..entry(
                6,
                3,
                0.5 * (s3 * PI).sqrt() + 1.5 * (s3 - (s3 / PI).sqrt()),
                FormulaId::SixThreeMedianArcs,
            )
        },
        entry(3, 4, 5.0 / 3.0, FormulaId::ThreeFourT),
        entry(4, 4, 2.0, FormulaId::FourFourCross),
    ];
    for n in family.filter(|&n| n >= 3) {
        let value = annulus_family(n).expect("n >= 3");
        table.push(entry(n + 1, n, value, FormulaId::AnnulusFamily));
    }
    table
}

/// Everything known about `l(m, n)` in one place.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub m: usize,
    pub n: usize,
    pub lower_bound: f64,
    pub asymptotic_lower_const: f64,
    pub asymptotic_upper_const: f64,
    pub exact_value: Option<f64>,
    pub conjectured_value: Option<f64>,
    pub best_construction_length: Option<f64>,
}

impl BoundsReport {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let exact_value = exact_infimum(m, n)?;
        let bracket = asymptotic_bracket(n)?;
        let conjectured_value = if exact_value.is_some() {
            None
        } else {
            conjecture_table(n..=n)
                .into_iter()
                .filter(|c| c.m == m && c.n == n)
                .map(|c| c.value)
                .reduce(f64::min)
        };
        Ok(Self {
            m,
            n,
            lower_bound: lower_bound(m, n)?,
            asymptotic_lower_const: bracket.lower_const,
            asymptotic_upper_const: bracket.upper_const,
            exact_value,
            conjectured_value,
            best_construction_length: None,
        })
    }

    pub fn with_construction(mut self, length: f64) -> Self {
        self.best_construction_length = Some(match self.best_construction_length {
            Some(prev) => prev.min(length),
            None => length,
        });
        self
    }

    /// Checks `lower_bound <= every populated upper value (+1e-12)`.
    pub fn is_consistent(&self) -> bool {
        [
            self.exact_value,
            self.conjectured_value,
            self.best_construction_length,
        ]
        .iter()
        .flatten()
        .all(|&v| self.lower_bound <= v + 1e-12)
            && !(self.exact_value.is_some() && self.conjectured_value.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen from a 30-digit evaluation of the closed forms.
    const L23: f64 = 0.673_386_843_544_299_2;
    const L33: f64 = 0.866_025_403_784_438_6;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn exact_values() {
        assert!(close(exact_infimum(2, 3).unwrap().unwrap(), L23, 1e-15));
        assert!(close(exact_infimum(3, 3).unwrap().unwrap(), L33, 1e-15));
        assert_eq!(exact_infimum(1, 5).unwrap(), Some(0.0));
        assert_eq!(exact_infimum(4, 4).unwrap(), None);
        assert!(exact_infimum(0, 3).is_err());
        assert!(exact_infimum(2, 2).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert!(close(
            lower_bound(2, 3).unwrap(),
            0.149_454_166_186_901_6,
            1e-14
        ));
        assert!(close(
            lower_bound(3, 3).unwrap(),
            0.520_160_530_632_897_5,
            1e-14
        ));
        assert!(close(
            lower_bound(4, 4).unwrap(),
            1.544_907_701_811_032,
            1e-14
        ));
        assert_eq!(lower_bound(1, 3).unwrap(), 0.0);
        assert!(lower_bound(1, 2).is_err());
    }

    #[test]
    fn brackets() {
        let b6 = asymptotic_bracket(6).unwrap();
        assert!(close(b6.upper_const, 3.0, 1e-12));
        let b3 = asymptotic_bracket(3).unwrap();
        assert!(close(b3.lower_const, 1.166_340_226_167_160_6, 1e-13));
        assert!(close(b3.upper_const, 1.224_744_871_391_589, 1e-13));
        let b4 = asymptotic_bracket(4).unwrap();
        assert!(close(b4.lower_const, 1.772_453_850_905_516, 1e-13));
        assert!(close(b4.upper_const, 1.861_209_718_204_199_2, 1e-13));
        let ratio = (PI / (2.0 * 3f64.sqrt())).sqrt();
        for n in 3..=40 {
            let b = asymptotic_bracket(n).unwrap();
            assert!(b.lower_const < b.upper_const);
            assert!(close(b.lower_const / b.upper_const, ratio, 1e-12));
        }
    }

    #[test]
    fn sector_values() {
        let s = sector_minimum(3f64.sqrt() / 8.0).unwrap();
        assert!(close(s.radius, 0.643_037_068_578_743_8, 1e-14));
        assert!(close(s.length, L23, 1e-14));
        let unit = sector_minimum(PI / 6.0).unwrap();
        assert!(close(unit.radius, 1.0, 1e-15));
        assert!(close(unit.length, PI / 3.0, 1e-15));
        let s = sector_minimum(3f64.sqrt() / 24.0).unwrap();
        assert!(close(s.length, 0.388_780_075_389_053_5, 1e-14));
        assert!(close(3.0 * s.length, 1.166_340_226_167_160_6, 1e-13));
        for a in [0.01, 0.3, 2.0, 17.0] {
            let s = sector_minimum(a).unwrap();
            assert!(close(s.length, PI / 3.0 * s.radius, 1e-12));
        }
        assert!(sector_minimum(0.0).is_err());
        assert!(sector_minimum(-1.0).is_err());
    }

    #[test]
    fn segment_values() {
        let s = chord_segment_minimum(3f64.sqrt() / 12.0).unwrap();
        assert!(close(s.length, 0.952_312_806_863_957_3, 1e-14));
        assert!(s.length > L33);
        let unit = chord_segment_minimum(PI / 2.0).unwrap();
        assert!(close(unit.r, 1.0, 1e-15) && close(unit.d, 1.0, 1e-15));
        assert!(close(unit.length, PI, 1e-14));
        let s = chord_segment_minimum(3f64.sqrt() / 4.0).unwrap();
        assert!(close(s.r, 0.525_037_567_904_332, 1e-14));
        assert!(close(s.length, 1.649_454_166_186_901_6, 1e-14));
        for a in [0.01, 0.3, 2.0, 17.0] {
            let seg = chord_segment_minimum(a).unwrap();
            let sec = sector_minimum(a).unwrap();
            assert!(close(seg.length, PI * seg.r, 1e-12));
            assert!(close(
                3.0 * sec.length.powi(2),
                seg.length.powi(2),
                1e-12 * seg.length.powi(2)
            ));
        }
        assert!(chord_segment_minimum(0.0).is_err());
    }

    #[test]
    fn circle_lengths() {
        assert!(close(
            circle_isoperimetric_length(PI).unwrap(),
            2.0 * PI,
            1e-14
        ));
        let half = circle_isoperimetric_length(3f64.sqrt() / 8.0).unwrap();
        assert!(close(half, (3f64.sqrt() * PI / 2.0).sqrt(), 1e-14));
        assert!(close(half, 1.649_454_166_186_901_6, 1e-14));
        let third = circle_isoperimetric_length(3f64.sqrt() / 12.0).unwrap();
        assert!(close(third, 1.346_773_687_088_598_4, 1e-14));
        assert!(circle_isoperimetric_length(-2.0).is_err());
    }

    #[test]
    fn simplex_sums() {
        let s = |d, e| simplex_distance_sum(&SimplexSpec::new(d, e).unwrap());
        assert!(close(s(2, 1.0), 3f64.sqrt() / 2.0, 1e-15));
        assert!(close(s(3, 1.0), 0.816_496_580_927_726, 1e-15));
        assert!(close(s(2, 2.0), 3f64.sqrt(), 1e-15));
        assert!(SimplexSpec::new(0, 1.0).is_err());
        assert!(SimplexSpec::new(2, 0.0).is_err());
    }

    #[test]
    fn conjectures() {
        let table = conjecture_table(3..=5);
        let get = |m, n, f| {
            table
                .iter()
                .find(|c| c.m == m && c.n == n && c.formula == f)
                .unwrap()
        };
        assert!(close(
            get(4, 3, FormulaId::FourThreeCornerArcs).value,
            1.428_469_210_295_936,
            1e-14
        ));
        assert!(close(get(4, 3, FormulaId::AnnulusFamily).value, 1.5, 1e-14));
        assert!(close(
            get(5, 4, FormulaId::AnnulusFamily).value,
            2.523_943_317_932_48,
            1e-13
        ));
        let l63 = get(6, 3, FormulaId::SixThreeMedianArcs);
        assert!(close(l63.value, 2.650_643_563_591_94, 1e-13));
        assert!(close(
            l63.disagreeing_value.unwrap(),
            2.624_003_800_909_866,
            1e-13
        ));
        assert_eq!(get(3, 4, FormulaId::ThreeFourT).value, 5.0 / 3.0);
        assert_eq!(get(4, 4, FormulaId::FourFourCross).value, 2.0);
        assert!(table.iter().all(|c| !c.proven));
    }

    #[test]
    fn lower_bound_never_exceeds_known_values() {
        let table = conjecture_table(3..=12);
        for m in 1..=64 {
            for n in 3..=12 {
                let lb = lower_bound(m, n).unwrap();
                if let Some(e) = exact_infimum(m, n).unwrap() {
                    assert!(lb <= e, "({m},{n})");
                }
                for c in table.iter().filter(|c| c.m == m && c.n == n) {
                    assert!(lb <= c.value, "({m},{n}) {:?}", c.formula);
                }
                assert!(BoundsReport::new(m, n).unwrap().is_consistent());
            }
        }
    }

    #[test]
    fn report_fields() {
        let r = BoundsReport::new(4, 3).unwrap();
        assert_eq!(r.exact_value, None);
        assert!(close(
            r.conjectured_value.unwrap(),
            1.428_469_210_295_936,
            1e-14
        ));
        let r = BoundsReport::new(2, 3).unwrap();
        assert!(r.conjectured_value.is_none());
        let r = r.with_construction(0.7).with_construction(0.68);
        assert_eq!(r.best_construction_length, Some(0.68));
        assert!(r.is_consistent());
        let bad = BoundsReport::new(4, 4).unwrap().with_construction(0.1);
        assert!(!bad.is_consistent());
    }
}
