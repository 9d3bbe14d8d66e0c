mod common;

use approx::assert_abs_diff_eq;
use common::{oracle_cs, oracle_dt, oracle_pv, oracle_s4, oracle_s5, oracle_sym10, oracle_sym3, oracle_sym8};
use hdccic::inner::{
    applicable_schemes, inner_best_optimized, inner_scheme, phase1_rates, Codeword, SchemeId,
};
use hdccic::outer::{bound_cs, bound_dt, bound_pv, OuterPieces};
use hdccic::{
    gains_from_exponents, gdof_closed_form, inner_best, inner_nocoop, outer_min, ChannelGains, ExponentPoint,
    GammaPolicy, Topology,
};
use proptest::prelude::*;

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Symmetric), Just(Topology::Z), Just(Topology::S)]
}

/// Linear gain from dB, with an occasional exact zero.
fn gain() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 9 => (-20.0f64..90.0).prop_map(|db| 10f64.powf(db / 10.0))]
}

fn any_gains() -> impl Strategy<Value = ChannelGains> {
    (gain(), gain(), gain(), gain()).prop_map(|(s, c, ip, ic)| ChannelGains::new(s, c, ip, ic).unwrap())
}

fn exponent_gains() -> impl Strategy<Value = (ChannelGains, Topology)> {
    (0.0f64..4.0, 0.0f64..6.0, 0.0f64..100.0, topology()).prop_map(|(a, b, db, t)| {
        let p = ExponentPoint::new(a, b, t).unwrap();
        (gains_from_exponents(&p, db).unwrap(), t)
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn sym(s: f64, i: f64, c: f64) -> ChannelGains {
    ChannelGains::for_topology(Topology::Symmetric, s, i, c).unwrap()
}

fn slope(p: &ExponentPoint, scheme: SchemeId, lo_db: f64, hi_db: f64) -> f64 {
    let rate = |db: f64| {
        let g = gains_from_exponents(p, db).unwrap();
        let r = inner_scheme(scheme, &g).unwrap();
        (r.sum_bits, 2.0 * g.s.log2())
    };
    let (r0, n0) = rate(lo_db);
    let (r1, n1) = rate(hi_db);
    (r1 - r0) / (n1 - n0)
}

#[test]
fn derived_outer_values() {
    let ones = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
    assert_abs_diff_eq!(bound_cs(&ones, 0.0), 2.507 + 2.0f64.min(13f64.log2()), epsilon = 1e-12);
    assert_abs_diff_eq!(bound_cs(&ones, 0.0), 4.507, epsilon = 1e-12);
    let g = ChannelGains::new(3.0, 1.0, 3.0, 0.0).unwrap();
    assert_abs_diff_eq!(bound_cs(&g, 1.0), 2.507 + 5f64.log2(), epsilon = 1e-12);
    let g = ChannelGains::new(1.0, 0.0, 0.0, 1.0).unwrap();
    assert_abs_diff_eq!(bound_dt(&g, 1.0), 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(bound_dt(&ones, 0.0), 2.0 + 5f64.log2(), epsilon = 1e-12);
    let s_chan = ChannelGains::new(1.0, 1.0, 1.0, 0.0).unwrap();
    assert_abs_diff_eq!(OuterPieces::new(&s_chan).dt[0].eval(0.0), 5.0, epsilon = 1e-12);
    assert_abs_diff_eq!(bound_pv(&ones, 0.0), 3.5048 + 2.0 * 3f64.log2(), epsilon = 1e-12);

    let opt = outer_min(&ones, GammaPolicy::Optimize).unwrap();
    assert!(opt.min_bits >= 2.0 + 5f64.log2() - 1e-12 && opt.min_bits <= 4.507 + 1e-12);
    let zeros = ChannelGains::new(0.0, 0.0, 0.0, 0.0).unwrap();
    assert_abs_diff_eq!(outer_min(&zeros, GammaPolicy::Optimize).unwrap().min_bits, 2.0, epsilon = 1e-12);

    let g = sym(100.0, 1e6, 1e8);
    let ib = inner_scheme(SchemeId::SymRegion3, &g).unwrap();
    assert!(outer_min(&g, GammaPolicy::Optimize).unwrap().min_bits >= ib.sum_bits);
}

#[test]
fn derived_inner_values() {
    let g = ChannelGains::new(1.0, 3.0, 0.0, 0.0).unwrap();
    let (b1, b2) = phase1_rates(&g, 1.0).unwrap();
    assert_abs_diff_eq!(b1, 1.0 - 1.5f64.log2(), epsilon = 1e-12);
    assert_abs_diff_eq!(b2, 2.5f64.log2(), epsilon = 1e-12);

    let r3 = inner_scheme(SchemeId::SymRegion3, &sym(100.0, 1e6, 1e8)).unwrap();
    let (want, gp) = oracle_sym3(100.0, 1e6, 1e8);
    assert_abs_diff_eq!(r3.sum_bits, want, epsilon = 1e-9);
    assert_abs_diff_eq!(r3.gamma_prime, gp, epsilon = 1e-12);
    assert!((r3.gamma_prime - 0.2498).abs() < 5e-4 && (r3.sum_bits - 15.63).abs() <= 0.05);

    let r10 = inner_scheme(SchemeId::SymRegion10, &sym(1e4, 10.0, 1e8)).unwrap();
    let (want, gp) = oracle_sym10(1e4, 10.0, 1e8);
    assert_abs_diff_eq!(r10.sum_bits, want, epsilon = 1e-9);
    assert_abs_diff_eq!(r10.gamma_prime, gp, epsilon = 1e-12);
    assert!((r10.gamma_prime - 0.206).abs() < 5e-4 && (r10.sum_bits - 20.1).abs() <= 0.2);

    let v = inner_nocoop(&sym(100.0, 1e6, 0.0), Topology::Symmetric).unwrap();
    assert_abs_diff_eq!(v.sum_bits, 2.0 * 101f64.log2(), epsilon = 1e-12);
    let s = ChannelGains::for_topology(Topology::S, 100.0, 10.0, 0.0).unwrap();
    let v = inner_nocoop(&s, Topology::S).unwrap();
    assert_abs_diff_eq!(v.sum_bits, 101f64.log2() + (1.0 + 100.0 / 11.0f64).log2(), epsilon = 1e-12);
    assert!((v.sum_bits - 10.0).abs() <= 0.05);

    let z = ExponentPoint::new(3.0, 4.0, Topology::Z).unwrap();
    let best = inner_best(&gains_from_exponents(&z, 60.0).unwrap(), Topology::Z).unwrap();
    assert!(best.scheme_id.is_cooperative());
}

/// Slopes between two high SNRs; the ratio at a single SNR converges only
/// as `1 / log SNR`.
#[test]
fn high_snr_slopes_match_gdof() {
    for (a, b, t, scheme) in [
        (3.0, 4.0, Topology::Symmetric, SchemeId::SymRegion3),
        (0.55, 2.0, Topology::Symmetric, SchemeId::SymRegion8),
        (0.25, 2.0, Topology::Symmetric, SchemeId::SymRegion10),
        (1.5, 3.0, Topology::S, SchemeId::SRegion4),
        (0.5, 3.0, Topology::S, SchemeId::SRegion5),
        (3.0, 4.0, Topology::Z, SchemeId::SymRegion3),
    ] {
        let p = ExponentPoint::new(a, b, t).unwrap();
        let d = gdof_closed_form(&p).d;
        let s = slope(&p, scheme, 100.0, 150.0);
        assert!((s - d).abs() <= 0.01, "{scheme:?}: slope {s} vs {d}");
    }
}

#[test]
fn gamma_prime_limits() {
    for (a, b, t, scheme, want) in [
        (0.55, 2.0, Topology::Symmetric, SchemeId::SymRegion8, 7.0 / 27.0),
        (1.5, 3.0, Topology::S, SchemeId::SRegion4, 0.2),
        (0.5, 3.0, Topology::S, SchemeId::SRegion5, 0.2),
    ] {
        let p = ExponentPoint::new(a, b, t).unwrap();
        let g = inner_scheme(scheme, &gains_from_exponents(&p, 100.0).unwrap()).unwrap();
        assert!((g.gamma_prime - want).abs() <= 0.005, "{scheme:?}: {}", g.gamma_prime);
    }
}

#[test]
fn s_region4_beats_nocoop_at_high_snr() {
    let p = ExponentPoint::new(1.5, 3.0, Topology::S).unwrap();
    for db in [40.0, 50.0, 60.0, 80.0, 100.0] {
        let g = gains_from_exponents(&p, db).unwrap();
        let coop = inner_scheme(SchemeId::SRegion4, &g).unwrap().sum_bits;
        assert!(coop >= inner_nocoop(&g, Topology::S).unwrap().sum_bits, "{db} dB");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn outer_pieces_match_published_expressions(g in any_gains(), gamma in 0.0f64..=1.0) {
        prop_assert!(close(bound_cs(&g, gamma), oracle_cs(&g, gamma), 1e-12));
        prop_assert!(close(bound_dt(&g, gamma), oracle_dt(&g, gamma), 1e-12));
        prop_assert!(close(bound_pv(&g, gamma), oracle_pv(&g, gamma), 1e-12));
    }

    #[test]
    fn outer_monotone_in_s_and_c(g in any_gains(), gamma in 0.0f64..=1.0, ds in 0.0f64..1e3, dc in 0.0f64..1e3) {
        let up = ChannelGains::new(g.s + ds, g.c + dc, g.i_p, g.i_c).unwrap();
        prop_assert!(bound_cs(&g, gamma) <= bound_cs(&up, gamma) + 1e-9);
        prop_assert!(bound_dt(&g, gamma) <= bound_dt(&up, gamma) + 1e-9);
        prop_assert!(bound_pv(&g, gamma) <= bound_pv(&up, gamma) + 1e-9);
        let lo = outer_min(&g, GammaPolicy::Optimize).unwrap().min_bits;
        let hi = outer_min(&up, GammaPolicy::Optimize).unwrap().min_bits;
        prop_assert!(lo <= hi + 1e-9);
    }

    #[test]
    fn cut_set_monotone_in_interference(g in any_gains(), gamma in 0.0f64..=1.0, dp in 0.0f64..1e3, dc in 0.0f64..1e3) {
        let up = ChannelGains::new(g.s, g.c, g.i_p + dp, g.i_c + dc).unwrap();
        prop_assert!(bound_cs(&g, gamma) <= bound_cs(&up, gamma) + 1e-9);
    }

    #[test]
    fn optimized_gamma_beats_every_fixed_gamma(g in any_gains(), gamma in 0.0f64..=1.0) {
        let opt = outer_min(&g, GammaPolicy::Optimize).unwrap().min_bits;
        prop_assert!(opt >= outer_min(&g, GammaPolicy::Fixed(gamma)).unwrap().min_bits - 1e-9);
    }

    #[test]
    fn inner_below_outer((g, t) in exponent_gains()) {
        let ob = outer_min(&g, GammaPolicy::Optimize).unwrap().min_bits;
        let ib = inner_best(&g, t).unwrap();
        let opt = inner_best_optimized(&g, t).unwrap();
        prop_assert!(ib.sum_bits <= ob);
        prop_assert!(opt.sum_bits <= ob);
        prop_assert!(opt.sum_bits >= ib.sum_bits);
    }

    #[test]
    fn schemes_match_published_closed_forms((g, t) in exponent_gains()) {
        let i = g.i_p.max(g.i_c);
        for id in applicable_schemes(&g, t).unwrap() {
            let Ok(r) = inner_scheme(id, &g) else { continue };
            let (want, gp) = match id {
                SchemeId::SymRegion3 => oracle_sym3(g.s, i, g.c),
                SchemeId::SymRegion8 => oracle_sym8(g.s, i, g.c),
                SchemeId::SymRegion10 => oracle_sym10(g.s, i, g.c),
                SchemeId::SRegion4 => oracle_s4(g.s, i, g.c),
                SchemeId::SRegion5 => oracle_s5(g.s, i, g.c),
                _ => unreachable!(),
            };
            prop_assert!(close(r.sum_bits, want, 1e-9), "{id:?}: {} vs {want}", r.sum_bits);
            prop_assert!((r.gamma_prime - gp).abs() <= 1e-12);
        }
    }

    #[test]
    fn rates_add_up_and_b2_is_conserved((g, t) in exponent_gains()) {
        for id in applicable_schemes(&g, t).unwrap() {
            let Ok(r) = inner_scheme(id, &g) else { continue };
            prop_assert!(close(r.component_sum(), r.sum_bits, 1e-9));
            let (_, learned) = phase1_rates(&g, r.gamma_prime).unwrap();
            let forwarded = r.component_rates.get(&Codeword::B2).copied().unwrap_or(0.0);
            prop_assert!(forwarded <= learned + 1e-9);
            // The listening fraction balances what is learned against x.
            prop_assert!(close(learned, (1.0 - r.gamma_prime) * r.x_aux, 1e-9));
        }
    }
}
