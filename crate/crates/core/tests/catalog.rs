use approx::assert_abs_diff_eq;
use compdist::catalog::{self, CatalogFilter};
use compdist::{DecoratorKind, Distribution, Error, Kernel, ValueSupport, VariateForm};
use proptest::prelude::*;

fn univariate_defaults() -> Vec<Distribution> {
    catalog::list_catalog(CatalogFilter {
        variate_form: Some(VariateForm::Univariate),
        ..Default::default()
    })
    .into_iter()
    .map(|e| (e.constructor)(&[]).unwrap())
    .collect()
}

/// Non-default shapes so that asymmetric and unbounded cases are covered.
fn shaped() -> Vec<Distribution> {
    vec![
        catalog::normal(&[("mean", 1.5.into()), ("sd", 2.0.into())]).unwrap(),
        catalog::binomial(&[("size", 17.0.into()), ("prob", 0.3.into())]).unwrap(),
        catalog::exponential(&[("rate", 0.5.into())]).unwrap(),
        catalog::gamma(&[("shape", 2.5.into()), ("rate", 3.0.into())]).unwrap(),
        catalog::gamma(&[("shape", 0.5.into())]).unwrap(),
        catalog::student_t(&[("df", 4.0.into())]).unwrap(),
        catalog::uniform(&[("lower", (-2.0).into()), ("upper", 3.0.into())]).unwrap(),
        catalog::discrete_uniform(&[("lower", (-3).into()), ("upper", 7.into())]).unwrap(),
        catalog::degenerate(&[("mean", 2.5.into())]).unwrap(),
        catalog::arcsine(&[("lower", 1.0.into()), ("upper", 4.0.into())]).unwrap(),
        catalog::poisson(&[("rate", 3.5.into())]).unwrap(),
        catalog::empirical(&[("samples", vec![0.3, -1.0, 2.0, 2.0, 5.5].into())]).unwrap(),
        catalog::weighted_discrete(&[
            ("x", vec![-1.0, 0.5, 4.0].into()),
            ("pdf", vec![0.2, 0.5, 0.3].into()),
        ])
        .unwrap(),
        catalog::epanechnikov(&[]).unwrap(),
        catalog::triangular(&[]).unwrap(),
    ]
}

#[test]
fn listing_is_ordered_and_filterable() {
    let all = catalog::list_catalog(CatalogFilter::default());
    assert_eq!(all.len(), 15);
    let discrete: Vec<_> = catalog::list_catalog(CatalogFilter {
        value_support: Some(ValueSupport::Discrete),
        ..Default::default()
    })
    .into_iter()
    .map(|e| e.class)
    .collect();
    assert!(discrete.contains(&"Binomial"));
    assert!(!discrete.contains(&"Normal"));
    let again: Vec<_> = catalog::list_catalog(CatalogFilter::default())
        .into_iter()
        .map(|e| e.class)
        .collect();
    assert_eq!(all.iter().map(|e| e.class).collect::<Vec<_>>(), again);
}

#[test]
fn defaults() {
    let n = catalog::normal(&[]).unwrap();
    assert_eq!(n.mean().unwrap(), 0.0);
    assert_eq!(n.variance().unwrap(), 1.0);
    let b = catalog::binomial(&[]).unwrap();
    assert_eq!(b.get_parameter("size").unwrap().as_f64(), Some(10.0));
    assert_eq!(b.get_parameter("prob").unwrap().as_f64(), Some(0.5));
}

#[test]
fn binomial_size_update() {
    let mut b = catalog::binomial(&[("prob", 0.1.into()), ("size", 5.0.into())]).unwrap();
    b.set_parameters(&[("size", 6.0.into())]).unwrap();
    assert_eq!(b.get_parameter("size").unwrap().as_f64(), Some(6.0));
    assert_eq!(b.support().finite_values().unwrap().len(), 7);
}

#[test]
fn gamma_groups() {
    assert!(catalog::gamma(&[("shape", 1.0.into()), ("rate", 1.0.into())]).is_ok());
    let err = catalog::gamma(&[("rate", 1.0.into()), ("scale", 2.0.into())]).unwrap_err();
    assert!(matches!(err, Error::ConflictingParameterisation { .. }));
}

#[test]
fn normal_parameterisations_agree() {
    let grid: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.2).collect();
    let a = catalog::normal(&[("sd", 2.0.into())])
        .unwrap()
        .pdf(&grid)
        .unwrap();
    let b = catalog::normal(&[("var", 4.0.into())])
        .unwrap()
        .pdf(&grid)
        .unwrap();
    let c = catalog::normal(&[("prec", 0.25.into())])
        .unwrap()
        .pdf(&grid)
        .unwrap();
    for i in 0..grid.len() {
        assert_abs_diff_eq!(a[i], b[i], epsilon = 1e-12);
        assert_abs_diff_eq!(a[i], c[i], epsilon = 1e-12);
    }
}

#[test]
fn exponential_cdf_closed_form() {
    let e = catalog::exponential(&[]).unwrap();
    // 1 - exp(-1)
    let oracle = 1.0 - (-1.0f64).exp();
    assert_abs_diff_eq!(e.cdf(&[1.0]).unwrap()[0], oracle, epsilon = 1e-15);
    assert_abs_diff_eq!(oracle, 0.6321206, epsilon = 5e-8);
}

#[test]
fn binomial_median_by_scan() {
    let b = catalog::binomial(&[]).unwrap();
    // smallest k whose running pmf total reaches one half, pmf by counting
    let choose = |n: u64, k: u64| (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64);
    let mut acc = 0.0;
    let mut k = 0;
    loop {
        acc += choose(10, k) / 1024.0;
        if acc >= 0.5 {
            break;
        }
        k += 1;
    }
    assert_eq!(k, 5);
    assert_eq!(b.quantile(&[0.5]).unwrap(), vec![k as f64]);
}

#[test]
fn binomial_mean_matches_pmf_sum() {
    let b = catalog::binomial(&[("size", 6.0.into()), ("prob", 0.1.into())]).unwrap();
    let support: Vec<f64> = (0..=6).map(f64::from).collect();
    let pmf = b.pdf(&support).unwrap();
    let brute: f64 = support.iter().zip(&pmf).map(|(x, p)| x * p).sum();
    assert_abs_diff_eq!(brute, 0.6, epsilon = 1e-12);
    assert_abs_diff_eq!(b.mean().unwrap(), 0.6, epsilon = 1e-15);
}

#[test]
fn interval_probability() {
    let n = catalog::normal(&[]).unwrap();
    // midpoint rule on the density, independent of the erf path
    let h = 1e-4;
    let brute: f64 = (0..20_000)
        .map(|i| {
            let x = -1.0 + (i as f64 + 0.5) * h;
            (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt() * h
        })
        .sum();
    assert_abs_diff_eq!(n.prob_interval(-1.0, 1.0).unwrap(), brute, epsilon = 1e-9);
    assert_abs_diff_eq!(brute, 0.6826895, epsilon = 5e-8);
    assert_eq!(n.prob_interval(0.3, 0.3).unwrap(), 0.0);
    let b = catalog::binomial(&[]).unwrap();
    assert_abs_diff_eq!(b.prob_interval(-1.0, 10.0).unwrap(), 1.0, epsilon = 1e-15);
}

#[test]
fn arcsine_traits_and_properties() {
    let a = catalog::arcsine(&[]).unwrap();
    assert_eq!(a.traits().to_string(), "continuous; univariate");
    assert_eq!(a.type_set().to_string(), "R");
    assert_eq!(a.support().to_string(), "[0,1]");
    assert_eq!(a.properties().symmetry.to_string(), "symmetric");
}

#[test]
fn empirical_counts() {
    let e = catalog::empirical(&[("samples", vec![1.0, 1.0, 2.0, 4.0].into())]).unwrap();
    assert_eq!(
        e.cdf(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
        vec![0.5, 0.75, 0.75, 1.0]
    );
    assert_eq!(e.pdf(&[1.0, 3.0]).unwrap(), vec![0.5, 0.0]);
    assert_eq!(e.quantile(&[0.5, 0.51, 1.0]).unwrap(), vec![1.0, 2.0, 4.0]);
    assert!(catalog::empirical(&[("samples", Vec::<f64>::new().into())]).is_err());
}

#[test]
fn empirical_of_draws_is_discrete() {
    let draws = catalog::exponential(&[])
        .unwrap()
        .rand(10_000, Some(7))
        .unwrap();
    let e = catalog::empirical(&[("samples", draws.into())]).unwrap();
    assert_eq!(e.traits().to_string(), "discrete; univariate");
}

#[test]
fn weighted_discrete_mean() {
    let w =
        catalog::weighted_discrete(&[("x", vec![1.0, 2.0].into()), ("pdf", vec![0.5, 0.5].into())])
            .unwrap();
    assert_eq!(w.mean().unwrap(), 1.5);
}

#[test]
fn weighted_discrete_renormalises() {
    let w =
        catalog::weighted_discrete(&[("x", vec![1.0, 2.0].into()), ("pdf", vec![1.0, 3.0].into())])
            .unwrap();
    assert_eq!(w.pdf(&[1.0, 2.0]).unwrap(), vec![0.25, 0.75]);
    assert!(
        catalog::weighted_discrete(&[("x", vec![1.0, 2.0].into()), ("pdf", vec![1.0].into())])
            .is_err()
    );
}

#[test]
fn weighted_discrete_matches_discrete_uniform() {
    let w = catalog::weighted_discrete(&[
        ("x", (1..=10).map(f64::from).collect::<Vec<_>>().into()),
        ("pdf", vec![0.1; 10].into()),
    ])
    .unwrap();
    let u = catalog::discrete_uniform(&[("lower", 1.into()), ("upper", 10.into())]).unwrap();
    let xs: Vec<f64> = (-2..=13).map(f64::from).collect();
    let ps: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    for (a, b) in w.pdf(&xs).unwrap().iter().zip(u.pdf(&xs).unwrap()) {
        assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
    }
    for (a, b) in w.cdf(&xs).unwrap().iter().zip(u.cdf(&xs).unwrap()) {
        assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
    }
    // exact multiples of 0.1 sit on a step; compare just off the steps
    let off: Vec<f64> = ps.iter().map(|p| p + 1e-9).collect();
    assert_eq!(w.quantile(&off).unwrap(), u.quantile(&off).unwrap());
}

#[test]
fn empirical_mv_fraction_below() {
    let e = catalog::empirical_mv_columns(&[vec![1.0, 2.0, 3.0, 4.0], vec![4.0, 3.0, 2.0, 1.0]])
        .unwrap();
    assert_eq!(e.traits().to_string(), "discrete; multivariate");
    let f = e
        .cdf_points(&[vec![2.0, 4.0], vec![4.0, 4.0], vec![0.0, 9.0]])
        .unwrap();
    assert_eq!(f, vec![0.5, 1.0, 0.0]);
    assert_eq!(e.pdf_points(&[vec![3.0, 2.0]]).unwrap(), vec![0.25]);
    let draws = e.rand_points(20, Some(1)).unwrap();
    assert!(draws.iter().all(|p| p[0] + p[1] == 5.0));
}

#[test]
fn kernels_centred_with_true_variances() {
    for (k, var) in [
        (catalog::epanechnikov(&[]).unwrap(), 0.2),
        (catalog::triangular(&[]).unwrap(), 1.0 / 6.0),
    ] {
        assert_abs_diff_eq!(k.mean().unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(k.variance().unwrap(), var, epsilon = 1e-15);
        assert_eq!(k.support().lower(), -k.support().upper());
        let numeric = k
            .clone()
            .decorated(&[DecoratorKind::CoreStatistics])
            .unwrap();
        assert_abs_diff_eq!(numeric.gen_exp(|x| x).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(numeric.gen_exp(|_| 1.0).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(numeric.gen_exp(|x| x * x).unwrap(), var, epsilon = 1e-9);
    }
}

#[test]
fn pmf_and_pdf_normalise() {
    for d in univariate_defaults().into_iter().chain(shaped()) {
        let total = d
            .clone()
            .decorated(&[DecoratorKind::CoreStatistics])
            .unwrap()
            .gen_exp(|_| 1.0)
            .unwrap();
        let tol = if d.value_support() == ValueSupport::Discrete {
            1e-9
        } else {
            1e-6
        };
        assert_abs_diff_eq!(total, 1.0, epsilon = tol);
    }
}

#[test]
fn closed_form_statistics_match_numeric() {
    for d in univariate_defaults().into_iter().chain(shaped()) {
        let num = d
            .clone()
            .decorated(&[DecoratorKind::CoreStatistics])
            .unwrap();
        let stats = [
            (d.model().mean(), num.gen_exp(|x| x)),
            (
                d.model().variance(),
                num.kth_moment(2, compdist::MomentType::Central),
            ),
        ];
        for (analytic, numeric) in stats {
            let (Some(a), Ok(n)) = (analytic, numeric) else {
                continue;
            };
            if !a.is_finite() {
                continue;
            }
            let scale = a.abs().max(1.0);
            assert!(
                ((a - n) / scale).abs() < 1e-4,
                "{}: analytic {a} numeric {n}",
                d.short_name()
            );
        }
    }
}

#[test]
fn analytic_kernels_survive_decoration() {
    let xs = [-1.0, 0.0, 0.3, 2.0];
    let plain = catalog::normal(&[("mean", 0.4.into())]).unwrap();
    let deco = plain.clone().decorated(&DecoratorKind::ALL).unwrap();
    assert_eq!(plain.pdf(&xs).unwrap(), deco.pdf(&xs).unwrap());
    assert_eq!(plain.cdf(&xs).unwrap(), deco.cdf(&xs).unwrap());
    assert_eq!(plain.mean().unwrap(), deco.mean().unwrap());
    assert!(deco.has_kernel(Kernel::Pdf));
}

fn probe_points(d: &Distribution) -> Vec<f64> {
    let ps: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    d.quantile(&ps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quantile_is_generalised_inverse(which in 0usize..15, p in 0.001..0.999f64) {
        let d = &shaped()[which];
        let x = d.quantile(&[p]).unwrap()[0];
        prop_assert!(d.cdf(&[x]).unwrap()[0] >= p, "{}: F({x}) < {p}", d.short_name());
        let y = probe_points(d)[(p * 98.0) as usize];
        let back = d.quantile(&d.cdf(&[y]).unwrap()).unwrap()[0];
        prop_assert!(back <= y + 1e-9, "{}: {back} > {y}", d.short_name());
    }

    #[test]
    fn cdf_monotone(which in 0usize..15, mut xs in proptest::collection::vec(-20.0..20.0f64, 2..30)) {
        let d = &shaped()[which];
        let t = d.type_set();
        for x in xs.iter_mut() {
            *x = x.max(t.lower());
            if t.is_integer_valued() {
                *x = x.round();
            }
        }
        xs.sort_by(f64::total_cmp);
        let f = d.cdf(&xs).unwrap();
        prop_assert!(f.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(f.iter().all(|v| (0.0..=1.0).contains(v)));
    }
}
