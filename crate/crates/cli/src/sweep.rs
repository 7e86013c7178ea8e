//! The `sweep` subcommand: one CSV row per `nu` point with the low real
//! levels and a residual summary. Points are distributed over worker threads
//! (capped by `PHTK_THREADS`) and merged back in `nu` order.

use anyhow::{bail, Context, Result};

use phtk_core::antilinear::is_anti_pseudo_hermitian;
use phtk_core::linalg;
use phtk_core::metrics::{eta_plus, is_pseudo_hermitian};
use phtk_core::models::bender_hamiltonian;
use phtk_core::spectra::eig_biorthonormal;
use phtk_core::Complex64;

struct Row {
    nu: f64,
    levels: Vec<Complex64>,
    real_modes: usize,
    ph: f64,
    anti_ph: f64,
    pt_defect: f64,
}

fn sweep_point(nu: f64, basis: usize, quad: usize, levels: usize) -> Result<Row> {
    let model = bender_hamiltonian(nu, basis, quad)?;
    let (values, _) = linalg::eig(&model.h)?;
    let mut real: Vec<Complex64> = values
        .iter()
        .filter(|v| v.im.abs() <= 1e-6 * v.re.abs().max(1.0))
        .copied()
        .collect();
    real.sort_by(|a, b| a.re.total_cmp(&b.re));
    let real_modes = real.len();
    real.truncate(levels);

    let sys = eig_biorthonormal(&model.h, 1e-10)?;
    let eta = eta_plus(&sys)?;
    let (_, ph) = is_pseudo_hermitian(&model.h, &eta, 1e-10)?;
    let tau = phtk_core::antilinear::tau_plus(&sys);
    let (_, anti_ph) = is_anti_pseudo_hermitian(&model.h, &tau, 1e-10)?;

    Ok(Row {
        nu,
        levels: real,
        real_modes,
        ph,
        anti_ph,
        pt_defect: model.pt_defect(),
    })
}

fn thread_cap() -> usize {
    std::env::var("PHTK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

pub fn run(
    nu_min: f64,
    nu_max: f64,
    steps: usize,
    basis: usize,
    quad: Option<usize>,
    levels: usize,
    output: &str,
) -> Result<i32> {
    if steps == 0 {
        bail!("steps must be positive");
    }
    if nu_min > nu_max {
        bail!("range error: nu_min {nu_min} exceeds nu_max {nu_max}");
    }
    if !(0.0..2.0).contains(&nu_min) || !(0.0..2.0).contains(&nu_max) {
        bail!("range error: nu must lie in [0, 2)");
    }
    let quad = quad.unwrap_or(2 * basis);
    let points: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                nu_min
            } else {
                nu_min + (nu_max - nu_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();

    let workers = thread_cap().min(points.len()).max(1);
    let mut rows: Vec<Option<Row>> = Vec::with_capacity(points.len());
    rows.resize_with(points.len(), || None);
    let chunk = points.len().div_ceil(workers);
    let results: Vec<(usize, Result<Row>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, chunk_points) in points.chunks(chunk).enumerate() {
            let start = w * chunk;
            let chunk_points = chunk_points.to_vec();
            handles.push(scope.spawn(move || {
                chunk_points
                    .iter()
                    .enumerate()
                    .map(|(k, &nu)| (start + k, sweep_point(nu, basis, quad, levels)))
                    .collect::<Vec<_>>()
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for (idx, row) in results {
        rows[idx] = Some(row.with_context(|| format!("sweep point {idx}"))?);
    }

    let mut out = String::new();
    out.push_str("nu");
    for k in 0..levels {
        out.push_str(&format!(",e{k}_re,e{k}_im"));
    }
    out.push_str(",real_modes,ph,anti_ph,pt_defect\n");
    for row in rows.into_iter().map(|r| r.expect("all rows computed")) {
        out.push_str(&format!("{:.16e}", row.nu));
        for k in 0..levels {
            match row.levels.get(k) {
                Some(z) => out.push_str(&format!(",{:.16e},{:.16e}", z.re, z.im)),
                None => out.push_str(",,"),
            }
        }
        out.push_str(&format!(
            ",{},{:.16e},{:.16e},{:.16e}\n",
            row.real_modes, row.ph, row.anti_ph, row.pt_defect
        ));
    }
    std::fs::write(output, out.as_bytes()).with_context(|| format!("writing {output}"))?;
    eprintln!("wrote {output}: {} rows", points.len());
    Ok(0)
}
