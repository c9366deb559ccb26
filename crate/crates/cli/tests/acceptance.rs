//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#[path = "../../core/tests/common/homology.rs"]
mod homology;
#[path = "../../core/tests/common/quadrature.rs"]
mod quadrature;

use std::process::Command;
use std::time::Instant;

use qcomplexity::classical::{
    compression_ratio, interaction_order, kernel_effective_dimension, kernel_gram, Spectrum, SpectrumSource,
};
use qcomplexity::classical::spectrum::effective_dimension_lower_bound;
use qcomplexity::composite::classical::classical_complexity;
use qcomplexity::composite::induced::{embed_rows, induced_metrics, INDUCED_TERMS};
use qcomplexity::composite::quantum::{quantum_metrics, QUANTUM_TERMS};
use qcomplexity::composite::trainability::{fit_alpha_points, trainability_prediction};
use qcomplexity::composite::{analyze_classical, normalize_complexity, weighted_score, ScoreKind};
use qcomplexity::qmetrics::expressibility::haar_fidelity_pdf;
use qcomplexity::qmetrics::gradient::cost_value;
use qcomplexity::qmetrics::{
    entanglement_entropy, expressibility_kl, gradient, gradient_variance_study, quantum_mutual_information,
    subsystem_entropy, CostKind, QuantumEnsemble,
};
use qcomplexity::qsim::{
    embed_dataset, random_layered_circuit, random_parameters, run_circuit, DensityMatrix, EncodingKind, FeatureMap,
    GateKind, ParameterizedCircuit, Pauli, PauliString, StateVector,
};
use qcomplexity::synthetic::SyntheticSpec;
use qcomplexity::tda::{betti_at_scale, rips_persistence, DistanceMatrix, DEFAULT_POINT_CAP};
use qcomplexity::{standardize, ConfigProfile, Dataset, KernelKind, SeededRng};
use rand::Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn circuit_state(n: usize, gates: &[(GateKind, &[usize])]) -> StateVector {
    let mut c = ParameterizedCircuit::new(n);
    for (g, q) in gates {
        c.gate(*g, q, 0);
    }
    run_circuit(&c, &[], &StateVector::zero(n).unwrap()).unwrap()
}

fn bell() -> StateVector {
    circuit_state(2, &[(GateKind::H, &[0]), (GateKind::Cnot, &[0, 1])])
}

fn barren_plateau() -> Check {
    let t = Instant::now();
    let ns: Vec<usize> = (2..=8).collect();
    let s = e(gradient_variance_study(&ns, 4, 500, CostKind::Global, &SeededRng::new(42)))?;
    let secs = t.elapsed().as_secs_f64();
    let slope = s.fitted_slope.ok_or("no slope")?;
    let ratio = s.variances[6] / s.variances[0];
    ensure(
        (-1.1..=-0.3).contains(&slope) && ratio < 0.1 && secs < 300.0,
        format!("slope {slope:.4} (theory -0.693), Var(8)/Var(2) = {ratio:.4}, {secs:.2} s"),
    )
}

fn entropy_exactness() -> Check {
    let s_bell = e(entanglement_entropy(&bell(), &[0]))?;
    let ghz = circuit_state(3, &[(GateKind::H, &[0]), (GateKind::Cnot, &[0, 1]), (GateKind::Cnot, &[1, 2])]);
    let s_ghz = e(subsystem_entropy(&ghz, &[1]))?;
    let mut worst_product: f64 = 0.0;
    let mut r = SeededRng::new(7).stream();
    for _ in 0..20 {
        let mut c = ParameterizedCircuit::new(3);
        for q in 0..3 {
            c.rotation(GateKind::Ry, q, 2 * q, 0).rotation(GateKind::Rz, q, 2 * q + 1, 0);
        }
        let s = e(run_circuit(&c, &random_parameters(6, &mut r), &StateVector::zero(3).unwrap()))?;
        for side in [vec![0], vec![1], vec![0, 2]] {
            worst_product = worst_product.max(e(entanglement_entropy(&s, &side))?);
        }
    }
    ensure(
        (s_bell - 1.0).abs() < 1e-9 && (s_ghz - 1.0).abs() < 1e-9 && worst_product < 1e-9,
        format!("Bell {s_bell:.12}, GHZ3 {s_ghz:.12}, max product {worst_product:.1e}"),
    )
}

fn mutual_information() -> Check {
    let i_bell = e(quantum_mutual_information(&bell(), &[0], &[1]))?;
    let mixed = e(DensityMatrix::mixture(&[
        (0.5, StateVector::basis(2, 0b00).unwrap()),
        (0.5, StateVector::basis(2, 0b11).unwrap()),
    ]))?;
    let i_cc = e(quantum_mutual_information(&mixed, &[0], &[1]))?;
    ensure(
        (i_bell - 2.0).abs() < 1e-9 && (i_cc - 1.0).abs() < 1e-9,
        format!("Bell {i_bell:.12}, classical mixture {i_cc:.12}"),
    )
}

fn kernel_spectra() -> Check {
    let eye: Vec<Vec<f64>> = (0..10).map(|i| (0..10).map(|j| (i == j) as u8 as f64).collect()).collect();
    let gram = e(kernel_gram(&e(Dataset::from_rows(eye, "identity"))?, KernelKind::Linear, 1.0))?;
    let d_eff = e(kernel_effective_dimension(&e(Spectrum::of_symmetric(gram, SpectrumSource::Kernel))?, 1.0))?;
    let mut r = SeededRng::new(11).stream();
    let mut violations = 0;
    for _ in 0..100 {
        let m = r.random_range(1..50);
        let values: Vec<f64> = (0..m)
            .map(|_| if r.random::<f64>() < 0.2 { 0.0 } else { r.random::<f64>() * 10f64.powi(r.random_range(-3..3)) })
            .collect();
        let s = e(Spectrum::from_values(values))?;
        let lambda = r.random::<f64>() * 3.0;
        if s.rank() > 0 && e(kernel_effective_dimension(&s, lambda))? < effective_dimension_lower_bound(&s, lambda) * (1.0 - 1e-12) {
            violations += 1;
        }
    }
    ensure(
        (d_eff - 5.0).abs() < 1e-12 && violations == 0,
        format!("identity d_eff {d_eff}, bound violations {violations}/100"),
    )
}

fn interaction_orders() -> Check {
    let parity = e(standardize(&e(SyntheticSpec::Parity { n: 2000, seed: 42 }.generate())?))?;
    let signs = e(standardize(&e(SyntheticSpec::Signs { n: 50_000, dim: 3, seed: 42 }.generate())?))?;
    let (p, s) = (e(interaction_order(&parity, 0.1))?, e(interaction_order(&signs, 0.1))?);
    ensure(p == 3 && s == 1, format!("parity {p}, independent signs {s}"))
}

fn distances(points: &[Vec<f64>]) -> Result<DistanceMatrix, String> {
    let rows: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    e(DistanceMatrix::euclidean(&rows))
}

fn topology() -> Check {
    let sq = distances(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])?;
    let pd = e(rips_persistence(&sq, sq.diameter(), 1, DEFAULT_POINT_CAP))?;
    let h1: Vec<_> = pd.of_dim(1).collect();
    let square_ok = h1.len() == 1 && (h1[0].birth - 1.0).abs() < 1e-9 && (h1[0].death - 2f64.sqrt()).abs() < 1e-9;

    let circle = e(SyntheticSpec::Circle { n: 100, noise: 0.05, seed: 42 }.generate())?;
    let dm = distances(&circle.rows().map(<[f64]>::to_vec).collect::<Vec<_>>())?;
    let pd = e(rips_persistence(&dm, dm.diameter(), 1, DEFAULT_POINT_CAP))?;
    let long = pd.lifetimes(1).iter().filter(|l| **l > 0.5).count();

    let mut mismatches = 0;
    for seed in 0..20 {
        let mut r = SeededRng::new(seed).stream();
        let n = r.random_range(3..=8);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..2).map(|_| r.random::<f64>()).collect()).collect();
        let dm = distances(&pts)?;
        let pd = e(rips_persistence(&dm, dm.diameter(), 2, DEFAULT_POINT_CAP))?;
        let mut ds: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| dm.get(i, j)).collect();
        ds.push(0.0);
        ds.sort_by(f64::total_cmp);
        for w in ds.windows(2) {
            let s = 0.5 * (w[0] + w[1]);
            let brute = homology::rips_betti(n, &|i, j| dm.get(i, j), s, 2);
            if (0..=2).any(|k| betti_at_scale(&pd, s, k) != brute[k]) {
                mismatches += 1;
            }
        }
    }
    ensure(
        square_ok && long == 1 && mismatches == 0,
        format!("square bar ok: {square_ok}, circle H1 bars > 0.5: {long}, brute-force mismatches: {mismatches}"),
    )
}

fn compression_ordering() -> Check {
    const MIB: usize = 1 << 20;
    let ratio = |spec: SyntheticSpec| -> Result<f64, String> { e(compression_ratio(&e(spec.generate())?, 9)) };
    let c = ratio(SyntheticSpec::Constant { bytes: MIB })?;
    let s = ratio(SyntheticSpec::Structured { bytes: MIB, seed: 42 })?;
    let r = ratio(SyntheticSpec::RandomBytes { bytes: MIB, seed: 42 })?;
    ensure(
        c < s && s < r && c < 0.05 && r > 0.95,
        format!("constant {c:.4} < structured {s:.4} < random {r:.4}"),
    )
}

fn expressibility_ordering() -> Check {
    let kl = |depth: usize| -> Result<f64, String> {
        let c = e(random_layered_circuit(2, depth, &SeededRng::new(42).child(depth as u64)))?;
        e(expressibility_kl(&c, 5000, 75, &SeededRng::new(43)))
    };
    let (k1, k3) = (kl(1)?, kl(3)?);
    let worst = (1..=6)
        .map(|n| (quadrature::simpson(|f| haar_fidelity_pdf(n, f), 0.0, 1.0, 20_000) - 1.0).abs())
        .fold(0.0, f64::max);
    ensure(
        k3 < k1 && worst < 1e-6,
        format!("KL depth 3 {k3:.4} < depth 1 {k1:.4} bits, Haar pdf mass error {worst:.1e}"),
    )
}

fn gradient_correctness() -> Check {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let rng = SeededRng::new(seed);
        let mut r = rng.stream();
        let n = r.random_range(1..=4);
        let c = e(random_layered_circuit(n, r.random_range(1..=3), &rng.child(1)))?;
        let theta = random_parameters(c.n_params, &mut r);
        let k = r.random_range(0..c.n_params);
        let obs = PauliString::new((0..n).map(|_| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][r.random_range(0..4)]).collect());
        let at = |d: f64| {
            let mut t = theta.clone();
            t[k] += d;
            cost_value(&c, &t, &obs)
        };
        let fd = (e(at(h))? - e(at(-h))?) / (2.0 * h);
        worst = worst.max((e(gradient(&c, &theta, &obs, k))? - fd).abs());
    }
    ensure(worst <= 1e-6, format!("max |shift - finite difference| = {worst:.2e} over 50 triples"))
}

fn simplex(r: &mut impl Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| -r.random::<f64>().ln()).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

fn composite_algebra() -> Check {
    let cfg = ConfigProfile::default();
    let mut r = SeededRng::new(5).stream();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for name in ["gaussian_blob", "parity", "circle", "clusters", "phase_ring"] {
        let d = e(e(SyntheticSpec::from_name(name, Some(100), 42))?.generate())?;
        let classical = analyze_classical(&d, &cfg).metrics;
        let fm = e(FeatureMap::for_dataset(EncodingKind::Angle, &d, None))?;
        let states = e(embed_rows(&d, &fm, &cfg))?;
        let induced = e(induced_metrics(&states, &fm, &cfg))?;
        let ensemble = e(QuantumEnsemble::uniform(e(embed_dataset(&fm, &d))?))?;
        let (quantum, _) = e(quantum_metrics(&ensemble, &cfg, None))?;
        for _ in 0..50 {
            let l = simplex(&mut r, 4);
            let scores = [
                e(classical_complexity(&classical, &[l[0], l[1], l[2], l[3]]))?.value,
                e(weighted_score(ScoreKind::Quantum, &quantum, &QUANTUM_TERMS, &simplex(&mut r, 6)))?.value,
                e(weighted_score(ScoreKind::Induced, &induced, &INDUCED_TERMS, &simplex(&mut r, 6)))?.value,
            ];
            for s in scores {
                lo = lo.min(s);
                hi = hi.max(s);
            }
        }
    }
    let ns: Vec<usize> = (2..=10).collect();
    let (alpha, depth, c) = (0.3, 4, 0.5);
    let clean: Vec<f64> = ns.iter().map(|&n| trainability_prediction(n, depth, c, alpha, 0.0, 0.0)).collect();
    let exact_err = (e(fit_alpha_points(&ns, &clean, depth, c))? - alpha).abs();
    // Each variance is a sample variance of 4000 draws.
    let noisy: Vec<f64> = clean
        .iter()
        .map(|v| {
            let xs: Vec<f64> = (0..4000).map(|_| v.sqrt() * (2.0 * r.random::<f64>() - 1.0) * 3f64.sqrt()).collect();
            let m = xs.iter().sum::<f64>() / 4000.0;
            xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / 3999.0
        })
        .collect();
    let noisy_rel = (e(fit_alpha_points(&ns, &noisy, depth, c))? - alpha).abs() / alpha;
    let normalized = e(normalize_complexity(&[0.21, 0.73, 0.4]))?;
    ensure(
        lo >= 0.0 && hi <= 1.0 && exact_err < 1e-9 && noisy_rel < 0.05 && normalized[1] == 1.0,
        format!(
            "composites in [{lo:.4}, {hi:.4}], alpha error {exact_err:.1e} clean / {:.2}% noisy, max normalized {}",
            100.0 * noisy_rel, normalized[1]
        ),
    )
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_qcomplexity");
    let dir = std::env::temp_dir().join(format!("qcomplexity-acceptance-{}", std::process::id()));
    e(std::fs::create_dir_all(&dir))?;
    let report = dir.join("report.json");
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = e(Command::new(bin).args(args).output())?;
        if !out.status.success() {
            return Err(format!("{args:?} exited {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    e(std::fs::write(&report, run(&["profile", "--synthetic", "circle"])?))?;
    let report = report.to_string_lossy().into_owned();
    let cases: Vec<Vec<&str>> = vec![
        vec!["profile", "--synthetic", "parity"],
        vec!["--format", "csv", "profile", "--synthetic", "clusters"],
        vec!["qprofile", "--synthetic", "phase_ring", "--map", "amplitude"],
        vec!["qprofile", "--synthetic", "gaussian_blob", "--map", "angle"],
        vec!["qprofile", "--synthetic", "signs", "--n", "64", "--map", "basis"],
        vec!["barren"],
        vec!["--format", "csv", "barren", "--cost", "local"],
        vec!["report", &report],
    ];
    for args in &cases {
        if run(args)? != run(args)? {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    Ok(format!("{} commands byte-identical across repeated runs", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("barren-plateau law", barren_plateau),
        ("entropy exactness", entropy_exactness),
        ("mutual information", mutual_information),
        ("kernel spectral formulas", kernel_spectra),
        ("interaction order", interaction_orders),
        ("topology", topology),
        ("compression ordering", compression_ordering),
        ("expressibility ordering", expressibility_ordering),
        ("gradient correctness", gradient_correctness),
        ("composite algebra", composite_algebra),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
