use approx::assert_abs_diff_eq;
use compdist::catalog;
use compdist::custom::CustomBuilder;
use compdist::distribution::Symmetry;
use compdist::{
    DecoratorKind, Distribution, Error, EvalOptions, Evaluation, MathSet, ValueSupport, VariateForm,
};

fn custom_uniform(decorators: &[DecoratorKind]) -> Distribution {
    CustomBuilder::new("Discrete Uniform")
        .short_name("DUnif")
        .type_set(MathSet::Integers)
        .support(MathSet::int_range(1, 10))
        .pdf(|_, _| 0.1)
        .decorators(decorators)
        .build()
        .unwrap()
}

#[test]
fn normal_density_values() {
    let n = catalog::normal(&[("mean", 1.0.into()), ("sd", 1.0.into())]).unwrap();
    let got = n.pdf(&[1.0, 2.0, 3.0, 4.0]).unwrap();
    let oracle: Vec<f64> = [0.0f64, 1.0, 2.0, 3.0]
        .iter()
        .map(|z| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt())
        .collect();
    for (g, o) in got.iter().zip(&oracle) {
        assert_abs_diff_eq!(g, o, epsilon = 1e-15);
    }
}

#[test]
fn binomial_upper_tail_log_table() {
    let b = catalog::binomial(&[("size", 10.0.into()), ("prob", 0.5.into())]).unwrap();
    let opts = EvalOptions {
        lower_tail: false,
        log: true,
        simplify: false,
    };
    let Evaluation::Table(t) = b.evaluate(compdist::Fun::Cdf, &[1.0, 2.0], opts).unwrap() else {
        panic!("expected a labelled table");
    };
    assert_eq!(t.labels(), ["Binom"]);
    // log(1 - F(k)) with F from exact binomial sums
    let f1 = 11.0 / 1024.0;
    let f2 = 56.0 / 1024.0;
    assert_abs_diff_eq!(t.column(0)[0], (1.0f64 - f1).ln(), epsilon = 1e-14);
    assert_abs_diff_eq!(t.column(0)[1], (1.0f64 - f2).ln(), epsilon = 1e-14);
}

#[test]
fn domain_errors_name_the_type() {
    let b = catalog::binomial(&[]).unwrap();
    let e = b.pdf(&[-1.0]).unwrap_err();
    assert!(matches!(e, Error::Domain { .. }));
    assert!(e.to_string().contains("N0"), "{e}");
    assert!(b.pdf(&[2.5]).is_err());
    assert!(catalog::normal(&[]).unwrap().quantile(&[1.5]).is_err());
}

#[test]
fn outside_support_inside_type_is_zero() {
    let u = catalog::uniform(&[]).unwrap();
    assert_eq!(u.pdf(&[2.0]).unwrap(), [0.0]);
    let opts = EvalOptions {
        log: true,
        ..Default::default()
    };
    assert_eq!(u.pdf_with(&[2.0], opts).unwrap(), [f64::NEG_INFINITY]);
}

#[test]
fn point_mass() {
    let d = catalog::degenerate(&[("mean", 3.0.into())]).unwrap();
    assert_eq!(d.pdf(&[3.0]).unwrap(), [1.0]);
    assert_eq!(d.rand(5, None).unwrap(), [3.0; 5]);
    assert_eq!(
        catalog::degenerate(&[]).unwrap().pdf(&[0.0]).unwrap(),
        [1.0]
    );
}

#[test]
fn log_and_tail_consistency() {
    let ds = [
        catalog::gamma(&[("shape", 3.0.into())]).unwrap(),
        catalog::poisson(&[("rate", 4.0.into())]).unwrap(),
        catalog::student_t(&[("df", 2.0.into())]).unwrap(),
    ];
    let xs = [0.0, 1.0, 2.0, 5.0, 9.0];
    for d in &ds {
        let log = EvalOptions {
            log: true,
            ..Default::default()
        };
        let upper = EvalOptions {
            lower_tail: false,
            ..Default::default()
        };
        let upper_log = EvalOptions {
            lower_tail: false,
            log: true,
            ..Default::default()
        };
        let pdf = d.pdf(&xs).unwrap();
        let cdf = d.cdf(&xs).unwrap();
        let lp = d.pdf_with(&xs, log).unwrap();
        let up = d.cdf_with(&xs, upper).unwrap();
        let ul = d.cdf_with(&xs, upper_log).unwrap();
        for i in 0..xs.len() {
            if pdf[i] > 0.0 {
                assert_abs_diff_eq!(lp[i], pdf[i].ln(), epsilon = 1e-12);
            }
            assert_abs_diff_eq!(up[i], 1.0 - cdf[i], epsilon = 1e-12);
            assert_abs_diff_eq!(ul[i], (1.0 - cdf[i]).ln(), epsilon = 1e-12);
        }
        let ps = [0.1, 0.5, 0.9];
        let q = d.quantile(&ps).unwrap();
        let qu = d.quantile_with(&ps.map(|p| 1.0 - p), upper).unwrap();
        for (a, b) in q.iter().zip(&qu) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}

#[test]
fn exponential_cdf_closed_form() {
    let e = catalog::exponential(&[]).unwrap();
    assert_abs_diff_eq!(
        e.cdf(&[1.0]).unwrap()[0],
        1.0 - (-1.0f64).exp(),
        epsilon = 1e-15
    );
    assert_eq!(e.cdf(&[0.0]).unwrap(), [0.0]);
}

#[test]
fn probability_of_intervals() {
    let n = catalog::normal(&[]).unwrap();
    let phi = n.cdf(&[1.0, -1.0]).unwrap();
    assert_abs_diff_eq!(
        n.prob_interval(-1.0, 1.0).unwrap(),
        phi[0] - phi[1],
        epsilon = 1e-15
    );
    assert_eq!(n.prob_interval(0.3, 0.3).unwrap(), 0.0);
    let b = catalog::binomial(&[]).unwrap();
    assert_abs_diff_eq!(b.prob_interval(-1.0, 10.0).unwrap(), 1.0, epsilon = 1e-15);
    assert!(n.prob_interval(1.0, 0.0).is_err());
}

#[test]
fn statistics() {
    let b = catalog::binomial(&[("size", 6.0.into()), ("prob", 0.1.into())]).unwrap();
    let brute: f64 = (0..=6)
        .map(|k| f64::from(k) * b.pdf(&[f64::from(k)]).unwrap()[0])
        .sum();
    assert_abs_diff_eq!(b.mean().unwrap(), 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(brute, 0.6, epsilon = 1e-12);
    let n = catalog::normal(&[("mean", 2.0.into()), ("var", 4.0.into())]).unwrap();
    assert_eq!(n.skewness().unwrap(), 0.0);
    assert_eq!(n.kurtosis(true).unwrap(), 0.0);
    assert_eq!(n.kurtosis(false).unwrap(), 3.0);
    assert_eq!(n.stdev().unwrap(), 2.0);
    assert_eq!(n.median().unwrap(), 2.0);
    assert_abs_diff_eq!(
        n.entropy(std::f64::consts::E).unwrap(),
        0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * 4.0).ln(),
        epsilon = 1e-12
    );
}

#[test]
fn statistics_without_form_need_decorator() {
    let u = custom_uniform(&[]);
    assert!(matches!(u.mean(), Err(Error::CapabilityMissing { .. })));
    assert!(u.describe().statistics.is_none());
    assert!(!u.describe().to_string().contains("Quick Statistics"));
}

#[test]
fn arcsine_traits_and_properties() {
    let a = catalog::arcsine(&[]).unwrap();
    let s = a.describe();
    assert_eq!(s.traits.value_support, ValueSupport::Continuous);
    assert_eq!(s.traits.variate_form, VariateForm::Univariate);
    assert_eq!(s.traits.type_set.to_string(), "R");
    assert_eq!(s.properties.support.to_string(), "[0,1]");
    assert_eq!(s.properties.symmetry, Symmetry::Symmetric);
}

#[test]
fn custom_uniform_summary() {
    let u = custom_uniform(&DecoratorKind::ALL);
    let text = u.describe().to_string();
    for needle in [
        "Mean:\t\t5.5",
        "Variance:\t8.25",
        "Skewness:\t0",
        "Ex. Kurtosis:\t-1.224242",
        "Support: {1, 2,...,9, 10}",
        "Traits:\tdiscrete; univariate",
        "Properties:\tasymmetric; platykurtic; no skew",
        "Decorated with:  CoreStatistics, ExoticStatistics, FunctionImputation",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
}

#[test]
fn custom_construction() {
    let u = custom_uniform(&[]);
    assert_eq!(u.pdf(&[1.0, 2.0, 3.0]).unwrap(), [0.1; 3]);
    assert_eq!(u.pdf(&[11.0]).unwrap(), [0.0]);
    assert!(matches!(
        u.cdf(&[1.0]),
        Err(Error::CapabilityMissing { .. })
    ));
    assert!(matches!(
        CustomBuilder::new("Nameless")
            .type_set(MathSet::Reals)
            .build(),
        Err(Error::Construction(_))
    ));
    assert!(CustomBuilder::new("x").pdf(|_, _| 1.0).build().is_err());
}

#[test]
fn multivariate_traits() {
    let mv = catalog::empirical_mv(&[]).unwrap();
    assert_eq!(mv.traits().variate_form, VariateForm::Multivariate);
    assert_eq!(
        catalog::normal(&[]).unwrap().traits().variate_form,
        VariateForm::Univariate
    );
}

#[test]
fn seeded_draws_repeat() {
    for d in [
        catalog::normal(&[]).unwrap(),
        catalog::exponential(&[]).unwrap(),
        catalog::binomial(&[]).unwrap(),
    ] {
        assert_eq!(d.rand(50, Some(42)).unwrap(), d.rand(50, Some(42)).unwrap());
        assert_ne!(d.rand(50, Some(42)).unwrap(), d.rand(50, Some(43)).unwrap());
    }
}

#[test]
fn sample_means_are_sane() {
    let n = 100_000;
    for d in [
        catalog::normal(&[("mean", 1.0.into()), ("sd", 2.0.into())]).unwrap(),
        catalog::exponential(&[("rate", 3.0.into())]).unwrap(),
        catalog::binomial(&[("size", 20.0.into()), ("prob", 0.3.into())]).unwrap(),
    ] {
        let draws = d.rand(n, Some(2024)).unwrap();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let se = (d.variance().unwrap() / n as f64).sqrt();
        assert!(
            (mean - d.mean().unwrap()).abs() < 5.0 * se,
            "{}: {mean}",
            d.short_name()
        );
    }
}

#[test]
fn zero_draws_rejected() {
    assert!(catalog::normal(&[]).unwrap().rand(0, None).is_err());
}
