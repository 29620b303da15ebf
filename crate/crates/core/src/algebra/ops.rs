//! The adaptation and composition operators.
//!
//! Products are evaluated left to right in increasing column order, in plain
//! double precision. Zeros are common (the dummy column is always 0) so there
//! is no log-space trick here.

use crate::error::{Error, Result};

use super::{
    ConversionProbabilityMatrix, DiscreteAvailabilityVector, MethodAvailabilityVector,
    MethodDependencyMatrix, ProbabilisticAdaptationFactor,
};

fn check(op: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            op,
            expected,
            found,
        })
    }
}

/// Boolean composition `c[k][i] = OR_j (b[k][j] AND a[j][i])`.
///
/// `b` adapts the intermediate interface to the final target and `a` adapts
/// the original source to the intermediate one, so `b` is on the left.
pub fn discrete_compose(
    b: &MethodDependencyMatrix,
    a: &MethodDependencyMatrix,
) -> Result<MethodDependencyMatrix> {
    check("discrete_compose", b.cols(), a.rows())?;
    let mut out = MethodDependencyMatrix::from_rows(vec![vec![false; a.cols()]; b.rows()])?;
    for k in 0..b.rows() {
        for j in b.support(k) {
            for i in a.support(j) {
                out.set(k, i, true);
            }
        }
    }
    Ok(out)
}

/// `result[j] = AND { p[i] : a[j][i] }`, with the empty conjunction true.
pub fn discrete_adapt(
    a: &MethodDependencyMatrix,
    p: &DiscreteAvailabilityVector,
) -> Result<DiscreteAvailabilityVector> {
    check("discrete_adapt", a.cols(), p.len())?;
    let entries = (0..a.rows())
        .map(|j| a.support(j).all(|i| p.get(i)))
        .collect();
    Ok(DiscreteAvailabilityVector::from_raw(entries))
}

/// Applies an adapter's factor to the availability of its source interface:
/// `result[j] = PRODUCT { conv[j][i] * p[i] : dep[j][i] }`, empty product 1.
///
/// Each factor in the product is the chance that the conversion for one
/// needed source method succeeds and that the source method then handles the
/// converted argument. Treating these as independent and argument-agnostic
/// is what makes the product exact.
pub fn prob_adapt(
    f: &ProbabilisticAdaptationFactor,
    p: &MethodAvailabilityVector,
) -> Result<MethodAvailabilityVector> {
    let (dep, conv) = (f.dep(), f.conv());
    check("prob_adapt", dep.cols(), p.len())?;
    let entries = (0..dep.rows())
        .map(|j| {
            dep.support(j)
                .fold(1.0, |acc, i| acc * (conv.get(j, i) * p.get(i)))
        })
        .collect();
    Ok(MethodAvailabilityVector::from_raw(entries))
}

/// Fuses `g` (intermediate → target) after `f` (source → intermediate) into
/// one factor:
///
/// - `dep = discrete_compose(g.dep, f.dep)`
/// - `conv[k][i] = PRODUCT { g.conv[k][j] * f.conv[j][i] : g.dep[k][j] AND f.dep[j][i] }`
///
/// Off-support conversion cells are stored as 0.
///
/// Applying the result agrees with applying `f` then `g` when every row of
/// `f` reached from `g` has exactly one dependency and the availability
/// vector is 0/1, which covers fully functional sources and one-to-one
/// method mappings. Outside that class the two differ: a source method
/// reached through several intermediate methods contributes its
/// availability once here but once per path when applied stepwise, a
/// `g.conv[k][j]` is repeated for every source method behind `j`, and it is
/// dropped entirely when `f` marks `j` always implementable. Chain loss in
/// [`crate::chaining`] is therefore evaluated stepwise.
pub fn prob_compose(
    g: &ProbabilisticAdaptationFactor,
    f: &ProbabilisticAdaptationFactor,
) -> Result<ProbabilisticAdaptationFactor> {
    let (b, u) = (g.dep(), g.conv());
    let (a, t) = (f.dep(), f.conv());
    check("prob_compose", b.cols(), a.rows())?;
    let dep = discrete_compose(b, a)?;
    let mut conv = ConversionProbabilityMatrix::zeros(b.rows(), a.cols());
    for k in 0..b.rows() {
        for i in dep.support(k) {
            let v = b
                .support(k)
                .filter(|&j| a.get(j, i))
                .fold(1.0, |acc, j| acc * (u.get(k, j) * t.get(j, i)));
            conv.set(k, i, v);
        }
    }
    Ok(ProbabilisticAdaptationFactor::from_parts(dep, conv))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{full_availability, identity_factor, FactorBuilder, DUMMY};

    fn dep(rows: &[&[u8]]) -> MethodDependencyMatrix {
        MethodDependencyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| c == 1).collect())
                .collect(),
        )
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    // Video adapters with the dummy slot restored.
    fn a1() -> ProbabilisticAdaptationFactor {
        FactorBuilder::new(2, 2).depends(1, 1, 4.0 / 6.0).build()
    }

    fn a3() -> ProbabilisticAdaptationFactor {
        FactorBuilder::new(3, 2)
            .depends(1, 1, 1.0)
            .depends(2, 1, 1.0)
            .build()
    }

    fn a4() -> ProbabilisticAdaptationFactor {
        FactorBuilder::new(2, 3)
            .depends(1, 1, 5.0 / 6.0)
            .depends(1, 2, 1.0)
            .build()
    }

    #[test]
    fn discrete_compose_identity_is_neutral() {
        let a = dep(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 0]]);
        let id = MethodDependencyMatrix::identity(3);
        assert_eq!(discrete_compose(&id, &a).unwrap(), a);
    }

    #[test]
    fn discrete_compose_video_fan_in() {
        // a4 (2x3) after a3 (3x2): playVideo needs both Video4 methods, which
        // both need playFile.
        let a3 = dep(&[&[1, 0], &[0, 1], &[0, 1]]);
        let a4 = dep(&[&[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(
            discrete_compose(&a4, &a3).unwrap(),
            dep(&[&[1, 0], &[0, 1]])
        );
    }

    #[test]
    fn discrete_compose_all_false_annihilates() {
        let b = MethodDependencyMatrix::with_dummy(3, 4);
        let a = dep(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, 0], &[1, 0, 0]]);
        let c = discrete_compose(&b, &a).unwrap();
        assert_eq!(c, MethodDependencyMatrix::with_dummy(3, 3));
    }

    #[test]
    fn discrete_compose_shape_error() {
        let b = MethodDependencyMatrix::with_dummy(2, 3);
        let a = MethodDependencyMatrix::with_dummy(2, 2);
        assert_eq!(
            discrete_compose(&b, &a).unwrap_err(),
            Error::ShapeMismatch {
                op: "discrete_compose",
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn discrete_adapt_edge_rows() {
        let a = dep(&[&[1, 0, 0], &[0, 0, 0], &[1, 0, 0], &[0, 1, 1]]);
        let p = DiscreteAvailabilityVector::new(vec![false, true, false]).unwrap();
        let r = discrete_adapt(&a, &p).unwrap();
        assert_eq!(r.entries(), &[false, true, false, false]);
    }

    #[test]
    fn discrete_adapt_matches_loop_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut rows = vec![vec![false; 4]; 4];
            rows[0][0] = true;
            for row in rows.iter_mut().skip(1) {
                for cell in row.iter_mut() {
                    *cell = rng.random_bool(0.5);
                }
            }
            let mut p: Vec<bool> = (0..4).map(|_| rng.random_bool(0.5)).collect();
            p[0] = false;
            let expected: Vec<bool> = rows
                .iter()
                .map(|row| {
                    let mut ok = true;
                    for i in 0..4 {
                        if row[i] && !p[i] {
                            ok = false;
                        }
                    }
                    ok
                })
                .collect();
            let a = MethodDependencyMatrix::from_rows(rows).unwrap();
            let p = DiscreteAvailabilityVector::new(p).unwrap();
            assert_eq!(discrete_adapt(&a, &p).unwrap().entries(), &expected[..]);
        }
    }

    #[test]
    fn prob_adapt_video_steps() {
        let one = full_availability(2);
        let step = prob_adapt(&a1(), &one).unwrap();
        assert_eq!(step.entries(), &[0.0, 4.0 / 6.0]);
        // A2 carries the same matrices as A1.
        let out = prob_adapt(&a1(), &step).unwrap();
        assert!(close(out.get(1), 4.0 / 9.0));
        assert_eq!(out.get(DUMMY), 0.0);
    }

    #[test]
    fn prob_adapt_empty_row_is_one() {
        let f = FactorBuilder::new(3, 2).depends(2, 1, 0.5).build();
        let p = MethodAvailabilityVector::new(vec![0.0, 0.0]).unwrap();
        let r = prob_adapt(&f, &p).unwrap();
        assert_eq!(r.entries(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn prob_adapt_identity() {
        let p = MethodAvailabilityVector::new(vec![0.0, 0.5, 0.7]).unwrap();
        assert_eq!(prob_adapt(&identity_factor(3), &p).unwrap(), p);
    }

    #[test]
    fn prob_adapt_full_availability_expansion() {
        let f = FactorBuilder::new(3, 4)
            .depends(1, 1, 0.5)
            .depends(1, 3, 0.8)
            .never(2)
            .build();
        let r = prob_adapt(&f, &full_availability(4)).unwrap();
        assert_eq!(r.entries(), &[0.0, 0.5 * 0.8, 0.0]);
    }

    #[test]
    fn prob_adapt_shape_error() {
        let p = full_availability(3);
        assert!(matches!(
            prob_adapt(&a1(), &p),
            Err(Error::ShapeMismatch {
                op: "prob_adapt",
                ..
            })
        ));
    }

    #[test]
    fn prob_compose_video_chain() {
        let c = prob_compose(&a4(), &a3()).unwrap();
        assert_eq!(
            c.dep().to_rows(),
            vec![vec![true, false], vec![false, true]]
        );
        assert!(close(c.conv().get(1, 1), 5.0 / 6.0));
        let r = prob_adapt(&c, &full_availability(2)).unwrap();
        assert!(close(r.get(1), 5.0 / 6.0));
    }

    #[test]
    fn prob_compose_keeps_dummy_conventions() {
        let c = prob_compose(&a4(), &a3()).unwrap();
        assert!(crate::algebra::validate_factor(&c).is_empty());
        let c = prob_compose(&a3(), &a1()).unwrap();
        assert!(crate::algebra::validate_factor(&c).is_empty());
    }

    #[test]
    fn prob_compose_with_identity() {
        let f = a4();
        let left = prob_compose(&identity_factor(2), &f).unwrap();
        let right = prob_compose(&f, &identity_factor(3)).unwrap();
        assert_eq!(left, f);
        assert_eq!(right, f);
    }

    #[test]
    fn prob_compose_shape_error() {
        assert_eq!(
            prob_compose(&a4(), &a1()).unwrap_err(),
            Error::ShapeMismatch {
                op: "prob_compose",
                expected: 3,
                found: 2
            }
        );
    }

    // Pinned cases where fused and stepwise application part ways.

    #[test]
    fn composition_drops_conversion_behind_always_row() {
        let g = FactorBuilder::new(2, 2).depends(1, 1, 0.5).build();
        let f = FactorBuilder::new(2, 2).build();
        let one = full_availability(2);
        let stepwise = prob_adapt(&g, &prob_adapt(&f, &one).unwrap()).unwrap();
        let fused = prob_adapt(&prob_compose(&g, &f).unwrap(), &one).unwrap();
        assert_eq!(stepwise.get(1), 0.5);
        assert_eq!(fused.get(1), 1.0);
    }

    #[test]
    fn composition_repeats_conversion_per_source_method() {
        let g = FactorBuilder::new(2, 2).depends(1, 1, 0.5).build();
        let f = FactorBuilder::new(2, 3)
            .depends(1, 1, 1.0)
            .depends(1, 2, 1.0)
            .build();
        let one = full_availability(3);
        let stepwise = prob_adapt(&g, &prob_adapt(&f, &one).unwrap()).unwrap();
        let fused = prob_adapt(&prob_compose(&g, &f).unwrap(), &one).unwrap();
        assert_eq!(stepwise.get(1), 0.5);
        assert_eq!(fused.get(1), 0.25);
    }

    #[test]
    fn composition_counts_shared_source_once() {
        let g = FactorBuilder::new(2, 3)
            .depends(1, 1, 1.0)
            .depends(1, 2, 1.0)
            .build();
        let f = FactorBuilder::new(3, 2)
            .depends(1, 1, 1.0)
            .depends(2, 1, 1.0)
            .build();
        let p = MethodAvailabilityVector::new(vec![0.0, 0.5]).unwrap();
        let stepwise = prob_adapt(&g, &prob_adapt(&f, &p).unwrap()).unwrap();
        let fused = prob_adapt(&prob_compose(&g, &f).unwrap(), &p).unwrap();
        assert_eq!(stepwise.get(1), 0.25);
        assert_eq!(fused.get(1), 0.5);
    }
}
