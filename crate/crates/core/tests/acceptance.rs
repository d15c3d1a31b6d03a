//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rifix::decide::{decide_fixed_point, index_test, lambda_rule, proposition_family, IndexStatus, Verdict};
use rifix::funcalg::{PiecewisePowerLog, PowerLogPiece, QuadratureConfig};
use rifix::grid::LogGrid;
use rifix::operators::{newton_kernel_sphere_integral, newton_shell_closed_form, RadialFunction, RieszLift};
use rifix::rearrange::{rearrangement, unit_ball_volume, DecreasingProfile, RadialProfile};
use rifix::spaces::{fundamental_indices, SpaceDescriptor};
use rifix::verify::{
    check_embedding, check_lemma_phi, check_oneil, check_superharmonic, default_lemma_s_grid,
    default_superharmonic_grids, embedding_corpus, SuperharmonicConfig,
};
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verdict(n: usize, x: &SpaceDescriptor) -> Result<Verdict, String> {
    decide_fixed_point(n, x).map(|d| d.verdict).map_err(err)
}

fn lebesgue_rule() -> Outcome {
    let mut cases = 0;
    for n in [3usize, 4, 5] {
        let critical = n as f64 / (n as f64 - 2.0);
        // expected verdicts are written out per case, not recomputed from p
        let table = [
            (1.0, false),
            (1.5, false),
            (critical, false),
            (critical + 0.01, true),
            (10.0, true),
            (f64::INFINITY, true),
        ];
        for (p, expected) in table {
            let got = verdict(n, &SpaceDescriptor::lebesgue(p).map_err(err)?)?;
            ensure(got.exists() == expected, || format!("n={n} p={p}: got {got:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases exact"))
}

fn lorentz_rule() -> Outcome {
    let yes = verdict(3, &SpaceDescriptor::lorentz(3.0, f64::INFINITY).map_err(err)?)?;
    ensure(yes.exists(), || "Lorentz(3,inf) should have a fixed point".into())?;
    for q in [1.0, 2.0, 5.0] {
        let v = verdict(3, &SpaceDescriptor::lorentz(3.0, q).map_err(err)?)?;
        ensure(!v.exists(), || format!("Lorentz(3,{q}) should not"))?;
    }
    let below = verdict(3, &SpaceDescriptor::lorentz(2.9, f64::INFINITY).map_err(err)?)?;
    ensure(!below.exists(), || "Lorentz(2.9,inf) should not".into())?;
    Ok("5 cases exact".into())
}

fn lambda_rule_cases() -> Outcome {
    let l1 = SpaceDescriptor::lambda(1.0, PiecewisePowerLog::constant(1.0)).map_err(err)?;
    ensure(!verdict(3, &l1)?.exists(), || "L^1 should not".into())?;
    let w = PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, 0.2), PowerLogPiece::power(1.0, 0.1))
        .map_err(err)?;
    let x = SpaceDescriptor::lambda(2.0, w.clone()).map_err(err)?;
    let mut detail = vec!["L^1 no".to_string()];
    // tail exponent of w(t) t^{-p(1-2/n)} is 0.1 - 2(1 - 2/n); n = 6 gives the t^{-4/3} integrand
    for (n, symbolic) in [(3usize, 0.1 - 2.0 / 3.0 < -1.0), (6, 0.1 - 4.0 / 3.0 < -1.0)] {
        let rule = lambda_rule(n, 2.0, &w).map_err(err)?;
        let got = verdict(n, &x)?;
        ensure(rule == symbolic && got.exists() == symbolic, || {
            format!("n={n}: symbolic {symbolic}, rule {rule}, decide {got:?}")
        })?;
        detail.push(format!("n={n} {}", if symbolic { "yes" } else { "no" }));
    }
    Ok(detail.join(", ") + " (verdict = finiteness of the weighted tail integral)")
}

/// `|{F > λ}|` by summing shell volumes on a fine grid, with no use of
/// monotonicity.
fn layer_cake_measure(f: &RadialProfile, lambda: f64, n: usize) -> f64 {
    let cn = unit_ball_volume(n);
    let steps = 20_000;
    let (lo, hi) = (1e-4f64, 1e4f64);
    let ratio = (hi / lo).powf(1.0 / steps as f64);
    let mut rho = lo;
    let mut total = if f.value(0.5 * lo) > lambda { cn * lo.powi(n as i32) } else { 0.0 };
    for _ in 0..steps {
        let next = rho * ratio;
        if f.value((rho * next).sqrt()) > lambda {
            total += cn * (next.powi(n as i32) - rho.powi(n as i32));
        }
        rho = next;
    }
    total
}

fn layer_cake_star(f: &RadialProfile, t: f64, n: usize) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if layer_cake_measure(f, mid, n) <= t {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn newtonian_rearrangement() -> Outcome {
    let grid = LogGrid::new(1e-2, 1e4, 64).map_err(err)?;
    let mut worst_closed = 0.0f64;
    let mut worst_cake = 0.0f64;
    for n in [3usize, 4, 5] {
        let f = RadialProfile::newtonian_cap(n).map_err(err)?;
        let star = rearrangement(&f).map_err(err)?;
        let cn = unit_ball_volume(n);
        for (i, t) in grid.points().into_iter().enumerate() {
            let closed = if t <= cn { 1.0 } else { (t / cn).powf((2.0 - n as f64) / n as f64) };
            worst_closed = worst_closed.max((star.value(t) - closed).abs());
            if i % 4 == 0 {
                worst_cake = worst_cake.max((star.value(t) - layer_cake_star(&f, t, n)).abs());
            }
        }
    }
    ensure(worst_closed <= 1e-9, || format!("closed form error {worst_closed:e}"))?;
    ensure(worst_cake <= 1e-3, || format!("layer-cake error {worst_cake:e}"))?;
    Ok(format!("closed form {worst_closed:.1e} (tol 1e-9), layer cake {worst_cake:.1e} (tol 1e-3)"))
}

fn fixed_point_certification() -> Outcome {
    let (rho, r) = default_superharmonic_grids();
    let cfg = SuperharmonicConfig::default();
    let mut detail = Vec::new();
    let cap = RadialProfile::newtonian_cap(3).map_err(err)?;
    let lift = RieszLift::unit_ball(3).map_err(err)?;
    let candidates: [(&str, &dyn RadialFunction); 2] = [("min(1,1/rho)", &cap), ("riesz lift", &lift)];
    for (name, f) in candidates {
        let rep = check_superharmonic(f, &rho, &r, &cfg).map_err(err)?;
        ensure(rep.rows.len() >= 400, || format!("only {} grid pairs", rep.rows.len()))?;
        ensure(rep.pass, || format!("{name}: {:?}", rep.criteria))?;
        detail.push(format!(
            "{name}: excess {:.1e}, small ball {:.1e}",
            rep.criteria[0].value, rep.criteria[1].value
        ));
    }
    Ok(detail.join("; "))
}

fn newton_kernel_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = QuadratureConfig {
        rel_tol: 1e-12,
        ..QuadratureConfig::default()
    };
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        for _ in 0..20 {
            let rho = 10f64.powf(rng.gen_range(-1.0..1.0));
            let s = 10f64.powf(rng.gen_range(-1.0..1.0));
            let q = newton_kernel_sphere_integral(n, rho, s, &cfg).map_err(err)?;
            let c = newton_shell_closed_form(n, rho, s);
            worst = worst.max((q / c - 1.0).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("relative error {worst:e}"))?;
    Ok(format!("60 pairs, worst relative error {worst:.1e} (tol 1e-8)"))
}

fn proposition_grid() -> Outcome {
    let mut worst_index = 0.0f64;
    for n in [3usize, 4] {
        let threshold = 1.0 - 2.0 / n as f64;
        for i in 0..=10 {
            for j in 0..=10 {
                let (a, b) = (i as f64 / 10.0, j as f64 / 10.0);
                let d = proposition_family(n, a, b).map_err(err)?;
                // n = 4 puts b = 1/2 on the threshold, which counts as a fixed point
                let expected = j as f64 <= 10.0 * threshold + 1e-9;
                ensure(d.verdict.exists() == expected, || format!("n={n} a={a} b={b}: {:?}", d.verdict))?;
                if i != j {
                    let lo = d.witnesses.beta_lower.unwrap_or(f64::NAN);
                    let hi = d.witnesses.beta_upper.unwrap_or(f64::NAN);
                    let e = (lo - a.min(b)).abs().max((hi - a.max(b)).abs());
                    ensure(e <= 1e-2, || format!("n={n} a={a} b={b}: indices ({lo}, {hi})"))?;
                    worst_index = worst_index.max(e);
                }
            }
        }
    }
    Ok(format!("242 verdicts exact, index error {worst_index:.1e} (tol 1e-2)"))
}

fn log_boundary_spaces() -> Outcome {
    let x0 = SpaceDescriptor::x0(3).map_err(err)?;
    let x1 = SpaceDescriptor::x1(3).map_err(err)?;
    ensure(!verdict(3, &x0)?.exists(), || "X0 should have no fixed point".into())?;
    ensure(verdict(3, &x1)?.exists(), || "X1 should have a fixed point".into())?;
    let mut worst = 0.0f64;
    for x in [&x0, &x1] {
        let r = fundamental_indices(x).map_err(err)?;
        worst = worst.max((r.beta_lower - 1.0 / 3.0).abs()).max((r.beta_upper - 1.0 / 3.0).abs());
    }
    ensure(worst <= 2e-2, || format!("index error {worst:e}"))?;
    Ok(format!("X0 no, X1 yes, index error {worst:.2e} (tol 2e-2)"))
}

fn index_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut counts = [0usize; 3];
    for i in 0..200 {
        let n = rng.gen_range(3..=5usize);
        let x = if i % 2 == 0 {
            SpaceDescriptor::proposition(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0))
        } else {
            let c = rng.gen_range(0.05..0.95);
            let k = rng.gen_range(-1.0..=1.0);
            PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, c), PowerLogPiece::new(1.0, c, k))
                .and_then(SpaceDescriptor::star)
        }
        .map_err(err)?;
        let exact = verdict(n, &x)?;
        let idx = index_test(n, &x).map_err(err)?;
        let slot = match idx.status {
            IndexStatus::GuaranteedNontrivial => 0,
            IndexStatus::GuaranteedTrivial => 1,
            IndexStatus::Indeterminate => 2,
        };
        counts[slot] += 1;
        let contradiction = matches!(
            (idx.status, exact),
            (IndexStatus::GuaranteedNontrivial, Verdict::NoFixedPoint)
                | (IndexStatus::GuaranteedTrivial, Verdict::FixedPointExists)
        );
        ensure(!contradiction, || format!("{}: {:?} vs {exact:?}", x.to_json(), idx.status))?;
    }
    Ok(format!(
        "200 descriptors, 0 contradictions ({} nontrivial, {} trivial, {} indeterminate)",
        counts[0], counts[1], counts[2]
    ))
}

fn lemma_check() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut detail = Vec::new();
    for (name, x) in [
        ("minimal", SpaceDescriptor::minimal(3)),
        ("L4", SpaceDescriptor::lebesgue(4.0)),
        ("L(3,inf)", SpaceDescriptor::lorentz(3.0, f64::INFINITY)),
    ] {
        let x = x.map_err(err)?;
        let rep = check_lemma_phi(&x, 3, &default_lemma_s_grid(), 10.0, &cfg).map_err(err)?;
        ensure(rep.pass, || format!("{name}: C = {}", rep.worst))?;
        let literal: Vec<f64> = rep.rows.iter().map(|r| r[4]).collect();
        let drift = literal[0] / literal[literal.len() - 1];
        detail.push(format!("{name} C={:.3} literal drift {drift:.3e}", rep.worst));
    }
    Ok(detail.join("; "))
}

fn oneil_sandwich() -> Outcome {
    let cfg = QuadratureConfig::default();
    let grid = LogGrid::per_decade(1e-2, 1e4, 8.0).map_err(err)?;
    let corpus = [
        ("indicator", DecreasingProfile::indicator(1.0)),
        ("two_step", DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5])),
        ("h_3", DecreasingProfile::h(3)),
        ("F*", DecreasingProfile::newtonian_cap_star(3)),
    ];
    let mut worst = 1.0f64;
    for (name, d) in corpus {
        let rep = check_oneil(&d.map_err(err)?, 3, &grid, 10.0, &cfg).map_err(err)?;
        ensure(rep.pass, || format!("{name}: C = {}", rep.worst))?;
        worst = worst.max(rep.worst);
    }
    Ok(format!("achieved C = {worst:.4} (ceiling 10)"))
}

fn embedding_constant() -> Outcome {
    let corpus = embedding_corpus(3).map_err(err)?;
    let l4 = check_embedding(3, &SpaceDescriptor::lebesgue(4.0).map_err(err)?, &corpus, 1e-9).map_err(err)?;
    ensure(l4.pass, || format!("L4 ratio {}", l4.worst))?;
    let min = check_embedding(3, &SpaceDescriptor::minimal(3).map_err(err)?, &corpus, 1e-9).map_err(err)?;
    ensure(min.pass, || format!("minimal ratio {}", min.worst))?;
    let w_row = corpus.iter().position(|(name, _)| name == "w_inverse").ok_or("no W^-1 in corpus")?;
    let eq = min.rows[w_row][2];
    ensure((eq - 1.0).abs() <= 1e-9, || format!("equality ratio {eq}"))?;
    Ok(format!(
        "L4: c = {:.12}, max ratio {:.6}; minimal: equality at W^-1 ({eq})",
        l4.criteria[1].value, l4.worst
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("lebesgue rule, n = 3, 4, 5", lebesgue_rule),
        ("lorentz rule, n = 3", lorentz_rule),
        ("lambda rule, n = 3", lambda_rule_cases),
        ("rearrangement of min(1, |x|^(2-n))", newtonian_rearrangement),
        ("super-harmonic candidates, n = 3", fixed_point_certification),
        ("newton kernel shell identity", newton_kernel_oracle),
        ("star family (a, b) grid, n = 3, 4", proposition_grid),
        ("log-boundary spaces X0, X1", log_boundary_spaces),
        ("index test soundness sweep", index_soundness),
        ("fundamental function of Y", lemma_check),
        ("O'Neil sandwich", oneil_sandwich),
        ("embedding constant", embedding_constant),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1)
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
