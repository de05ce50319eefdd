//! Regression and ANOVA checked against independent hand computations.

use rand::Rng;
use statrs::distribution::{ContinuousCDF, FisherSnedecor, StudentsT};

use lexkernel::levels::HierarchyKind;
use lexkernel::psyling::{
    anova, level_means, merge_norms, regress, AnalysisOptions, LeveledObservations, NormRecord,
    NormTable, Observation, Variable,
};
use lexkernel::stats::{beta_reg, f_upper_p, t_two_sided_p};
use lexkernel::synth;

const TOL: f64 = 1e-8;

fn observations(rows: Vec<(u32, [f64; 5])>) -> LeveledObservations {
    let n = rows.len();
    LeveledObservations {
        hierarchy: HierarchyKind::Scc,
        records: rows
            .into_iter()
            .enumerate()
            .map(|(i, (level, v))| Observation {
                word: format!("w{i:03}"),
                level,
                values: v.map(Some),
            })
            .collect(),
        hierarchy_words: n,
        coverage: 1.0,
        unmatched_norms: 0,
    }
}

/// 50 rows with correlated predictors and a level that depends on them.
fn fixture(seed: u64) -> Vec<(u32, [f64; 5])> {
    let mut rng = synth::rng(seed);
    (0..50)
        .map(|_| {
            let a: f64 = rng.gen_range(2.0..12.0);
            let c = 300.0 + 20.0 * a + rng.gen_range(-80.0..80.0);
            let i = 0.8 * c + rng.gen_range(-60.0..60.0);
            let bf = rng.gen_range(0.0..2000.0);
            let tlf = 0.5 * bf + rng.gen_range(0.0..400.0);
            let level = (0.6 * a - 0.004 * c + rng.gen_range(-1.5..1.5)).clamp(0.0, 8.0);
            (level.round() as u32, [a, c, i, bf, tlf])
        })
        .collect()
}

fn zscore(xs: &[f64]) -> Vec<f64> {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    xs.iter().map(|x| (x - m) / sd).collect()
}

/// Inverse of a small dense matrix by Gauss-Jordan with partial pivoting.
fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let p = a.len();
    let mut inv: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..p {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..p {
            if r != col {
                let f = a[r][col];
                for j in 0..p {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    inv
}

struct HandFit {
    beta: Vec<f64>,
    t: Vec<f64>,
    p: Vec<f64>,
}

/// Standardized OLS through the normal equations `(XᵀX) b = Xᵀy`.
fn hand_solve(rows: &[(u32, [f64; 5])]) -> HandFit {
    let n = rows.len();
    let y = zscore(&rows.iter().map(|r| r.0 as f64).collect::<Vec<_>>());
    let x: Vec<Vec<f64>> = (0..5)
        .map(|j| zscore(&rows.iter().map(|r| r.1[j]).collect::<Vec<_>>()))
        .collect();
    let xtx: Vec<Vec<f64>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| (0..n).map(|k| x[i][k] * x[j][k]).sum())
                .collect()
        })
        .collect();
    let xty: Vec<f64> = (0..5)
        .map(|i| (0..n).map(|k| x[i][k] * y[k]).sum())
        .collect();
    let inv = invert(xtx);
    let beta: Vec<f64> = (0..5)
        .map(|i| (0..5).map(|j| inv[i][j] * xty[j]).sum())
        .collect();
    let rss: f64 = (0..n)
        .map(|k| {
            let fit: f64 = (0..5).map(|j| beta[j] * x[j][k]).sum();
            (y[k] - fit).powi(2)
        })
        .sum();
    let df = (n - 6) as f64;
    let sigma2 = rss / df;
    let dist = StudentsT::new(0.0, 1.0, df).unwrap();
    let t: Vec<f64> = (0..5)
        .map(|j| beta[j] / (sigma2 * inv[j][j]).sqrt())
        .collect();
    let p = t.iter().map(|t| 2.0 * dist.sf(t.abs())).collect();
    HandFit { beta, t, p }
}

#[test]
fn regression_matches_normal_equations() {
    for seed in [1, 2, 3] {
        let rows = fixture(seed);
        let hand = hand_solve(&rows);
        let r = regress(&observations(rows), &AnalysisOptions::default()).unwrap();
        assert_eq!((r.n, r.df), (50, 44));
        for (j, v) in Variable::ALL.iter().enumerate() {
            let c = r.get(*v);
            assert!((c.beta - hand.beta[j]).abs() < TOL, "{v} beta");
            assert!((c.t - hand.t[j]).abs() < TOL, "{v} t");
            assert!((c.p - hand.p[j]).abs() < TOL, "{v} p");
        }
    }
}

#[test]
fn regression_is_invariant_to_affine_rescaling() {
    let rows = fixture(11);
    let base = regress(&observations(rows.clone()), &AnalysisOptions::default()).unwrap();
    for (j, (a, b)) in [(3.5, -200.0), (1e-3, 7.0), (250.0, 1e4)]
        .into_iter()
        .enumerate()
    {
        let scaled: Vec<_> = rows
            .iter()
            .map(|&(l, mut v)| {
                v[j] = a * v[j] + b;
                (l, v)
            })
            .collect();
        let r = regress(&observations(scaled), &AnalysisOptions::default()).unwrap();
        for (x, y) in base.coefficients.iter().zip(&r.coefficients) {
            assert!((x.beta - y.beta).abs() < TOL);
            assert!((x.t - y.t).abs() < TOL);
            assert!((x.p - y.p).abs() < TOL);
        }
    }
    // A negative factor only flips the sign of that coefficient.
    let flipped: Vec<_> = rows
        .iter()
        .map(|&(l, mut v)| {
            v[4] = -2.0 * v[4] + 1.0;
            (l, v)
        })
        .collect();
    let r = regress(&observations(flipped), &AnalysisOptions::default()).unwrap();
    let (x, y) = (base.get(Variable::Tlf), r.get(Variable::Tlf));
    assert!((x.beta + y.beta).abs() < TOL);
    assert!((x.p - y.p).abs() < TOL);
}

fn one_variable(groups: &[(u32, &[f64])], v: Variable) -> LeveledObservations {
    let mut rows = Vec::new();
    for &(level, xs) in groups {
        for &x in xs {
            let mut values = [0.0; 5];
            values[v as usize] = x;
            rows.push((level, values));
        }
    }
    observations(rows)
}

#[test]
fn anova_matches_manual_sums_of_squares() {
    let groups: [(u32, &[f64]); 3] = [
        (0, &[4.1, 5.3, 6.0, 5.5, 4.8]),
        (1, &[6.2, 7.1, 6.8, 7.7]),
        (2, &[5.0, 6.6, 5.9, 6.1, 7.0, 6.4]),
    ];
    let all: Vec<f64> = groups.iter().flat_map(|g| g.1.iter().copied()).collect();
    let grand = all.iter().sum::<f64>() / all.len() as f64;
    let mut ssb = 0.0;
    let mut ssw = 0.0;
    for (_, xs) in groups {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        ssb += xs.len() as f64 * (m - grand).powi(2);
        ssw += xs.iter().map(|x| (x - m).powi(2)).sum::<f64>();
    }
    let (d1, d2) = (2.0, (all.len() - 3) as f64);
    let f = (ssb / d1) / (ssw / d2);
    let p = FisherSnedecor::new(d1, d2).unwrap().sf(f);

    let a = anova(
        &one_variable(&groups, Variable::Aoa),
        Variable::Aoa,
        &AnalysisOptions::default(),
    )
    .unwrap();
    assert_eq!((a.df_between, a.df_within), (2, 12));
    assert!((a.f - f).abs() < TOL);
    assert!((a.p - p).abs() < TOL);

    // Post-hoc pairs against a pooled-variance t with Bonferroni factor 3.
    let (xa, xb) = (groups[0].1, groups[1].1);
    let (ma, mb) = (
        xa.iter().sum::<f64>() / xa.len() as f64,
        xb.iter().sum::<f64>() / xb.len() as f64,
    );
    let ss: f64 = xa.iter().map(|x| (x - ma).powi(2)).sum::<f64>()
        + xb.iter().map(|x| (x - mb).powi(2)).sum::<f64>();
    let df = (xa.len() + xb.len() - 2) as f64;
    let se = (ss / df * (1.0 / xa.len() as f64 + 1.0 / xb.len() as f64)).sqrt();
    let t = (ma - mb) / se;
    let p = 2.0 * StudentsT::new(0.0, 1.0, df).unwrap().sf(t.abs());
    let pair = a.pair(0, 1).unwrap();
    assert!((pair.t - t).abs() < TOL);
    assert!((pair.p - p).abs() < TOL);
    assert!((pair.p_adjusted - (3.0 * p).min(1.0)).abs() < TOL);
}

#[test]
fn anova_p_agrees_with_permutation_test() {
    let groups: [(u32, &[f64]); 3] = [
        (1, &[3.1, 4.4, 2.9, 5.0, 3.8, 4.2, 3.5, 4.9]),
        (2, &[4.0, 4.8, 5.2, 3.9, 4.6, 5.5, 4.1, 4.4]),
        (3, &[3.6, 5.1, 4.3, 5.8, 4.9, 4.5, 5.0, 3.7]),
    ];
    let obs = one_variable(&groups, Variable::C);
    let observed = anova(&obs, Variable::C, &AnalysisOptions::default()).unwrap();

    let values: Vec<f64> = groups.iter().flat_map(|g| g.1.iter().copied()).collect();
    let f_of = |xs: &[f64]| {
        let grand = xs.iter().sum::<f64>() / xs.len() as f64;
        let (mut ssb, mut ssw) = (0.0, 0.0);
        for chunk in xs.chunks(8) {
            let m = chunk.iter().sum::<f64>() / 8.0;
            ssb += 8.0 * (m - grand).powi(2);
            ssw += chunk.iter().map(|x| (x - m).powi(2)).sum::<f64>();
        }
        (ssb / 2.0) / (ssw / 21.0)
    };
    let f0 = f_of(&values);
    assert!((f0 - observed.f).abs() < TOL);

    use rand::seq::SliceRandom;
    let mut rng = synth::rng(99);
    let trials = 20_000;
    let mut shuffled = values.clone();
    let mut hits = 0;
    for _ in 0..trials {
        shuffled.shuffle(&mut rng);
        if f_of(&shuffled) >= f0 - 1e-12 {
            hits += 1;
        }
    }
    let estimate = hits as f64 / trials as f64;
    let sigma = (observed.p * (1.0 - observed.p) / trials as f64).sqrt();
    assert!(
        (estimate - observed.p).abs() < 3.0 * sigma,
        "permutation {estimate} vs F {}",
        observed.p
    );
}

#[test]
fn tail_functions_agree_with_statrs() {
    for df in [1.0, 2.0, 3.5, 10.0, 44.0, 300.0] {
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        for t in [0.01, 0.5, 1.0, 2.0, 3.3, 8.0] {
            let expected = 2.0 * dist.sf(t);
            let got = t_two_sided_p(t, df);
            assert!(
                (got - expected).abs() <= 1e-10 * expected.max(1e-300),
                "t={t} df={df}"
            );
        }
    }
    for (d1, d2) in [(1.0, 5.0), (2.0, 12.0), (4.0, 40.0), (8.0, 3.0)] {
        let dist = FisherSnedecor::new(d1, d2).unwrap();
        for f in [0.1, 0.9, 1.7, 4.0, 25.0] {
            let expected = dist.sf(f);
            let got = f_upper_p(f, d1, d2);
            assert!(
                (got - expected).abs() <= 1e-10 * expected,
                "f={f} ({d1},{d2})"
            );
        }
    }
    for (a, b) in [(0.5, 0.5), (2.0, 3.0), (10.0, 0.5), (30.0, 40.0)] {
        for x in [0.05, 0.3, 0.5, 0.77, 0.99] {
            let expected = statrs::function::beta::beta_reg(a, b, x);
            assert!(
                (beta_reg(a, b, x) - expected).abs() < 1e-12,
                "I_{x}({a},{b})"
            );
        }
    }
}

#[test]
fn means_of_single_records_are_the_records() {
    let rows: Vec<(u32, [f64; 5])> = (0..6)
        .map(|l| (l, [l as f64, 2.0 * l as f64, 3.5, 0.25 * l as f64, 9.0]))
        .collect();
    let means = level_means(&observations(rows.clone()), &AnalysisOptions::default());
    assert_eq!(means.len(), rows.len());
    for (m, (level, values)) in means.iter().zip(&rows) {
        assert_eq!(m.level, *level);
        for v in Variable::ALL {
            assert_eq!(m.get(v).mean, Some(values[v as usize]));
            assert_eq!(m.get(v).n, 1);
        }
    }
}

#[test]
fn merge_is_associative_and_idempotent() {
    let table = |rows: &[(&str, [Option<f64>; 5])]| {
        NormTable::from_rows(
            rows.iter()
                .map(|(w, v)| (w.to_string(), NormRecord { values: *v })),
        )
    };
    let a = table(&[
        ("x", [Some(1.0), None, None, None, None]),
        ("y", [None, Some(2.0), None, None, None]),
    ]);
    let b = table(&[
        ("x", [Some(5.0), Some(6.0), None, None, None]),
        ("z", [Some(7.0); 5]),
    ]);
    let c = table(&[
        ("y", [Some(8.0), Some(9.0), Some(1.0), None, None]),
        ("x", [None, None, None, None, Some(4.0)]),
    ]);
    let left = merge_norms(&[merge_norms(&[a.clone(), b.clone()]), c.clone()]);
    let right = merge_norms(&[a.clone(), merge_norms(&[b.clone(), c.clone()])]);
    assert_eq!(left, right);
    assert_eq!(merge_norms(&[a.clone(), a.clone()]), a);
    assert_eq!(
        left.get("x").unwrap().values,
        [Some(1.0), Some(6.0), None, None, Some(4.0)]
    );
}

/// Rows whose only signal is a lower AOA at level 0: levels 1–8 all carry
/// the same block of rows, so nothing there relates to the level.
fn level_zero_signal() -> LeveledObservations {
    let mut rng = synth::rng(5);
    let block: Vec<[f64; 5]> = (0..25)
        .map(|_| {
            [
                rng.gen_range(6.0..12.0),
                rng.gen_range(200.0..600.0),
                rng.gen_range(200.0..600.0),
                rng.gen_range(0.0..500.0),
                rng.gen_range(0.0..500.0),
            ]
        })
        .collect();
    let mut rows = Vec::new();
    for v in &block {
        let mut v = *v;
        v[0] -= 4.0;
        rows.push((0, v));
    }
    for level in 1..=8 {
        rows.extend(block.iter().map(|v| (level, *v)));
    }
    observations(rows)
}

#[test]
fn level_zero_signal_disappears_without_level_zero() {
    let obs = level_zero_signal();
    let full = regress(&obs, &AnalysisOptions::default()).unwrap();
    let aoa = full.get(Variable::Aoa);
    assert!(aoa.p < 0.001, "p = {}", aoa.p);
    assert_eq!(aoa.stars, "***");

    let upper = regress(&obs, &AnalysisOptions::excluding_below(1)).unwrap();
    for c in &upper.coefficients {
        assert!(c.p >= 0.05, "{} p = {}", c.predictor, c.p);
        assert!(c.beta.abs() < 1e-10);
        assert_eq!(c.stars, "");
    }
    let a = anova(&obs, Variable::Aoa, &AnalysisOptions::excluding_below(1)).unwrap();
    assert!(a.f.abs() < 1e-10 && a.p > 0.99);
    let a = anova(&obs, Variable::Aoa, &AnalysisOptions::default()).unwrap();
    assert!(a.p < 0.001);
}
