//! Plot-ready CSV emission. Floats carry 17 significant digits so every
//! value round-trips exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use peakon_core::lab::{GridPoint, SweepResult};
use peakon_core::Trajectory;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,norm_u_Hs,norm_v_Hs,norm_UV_Hs1,H1,H2,consistency_residual\n");
    for (t, d) in traj.times.iter().zip(&traj.diagnostics) {
        let row = [
            *t,
            d.norm_u_hs,
            d.norm_v_hs,
            d.norm_uv_hs1,
            d.h1,
            d.h2,
            d.consistency_residual,
        ];
        let cells: Vec<String> = row.into_iter().map(float).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Writes `trajectory.csv` and one `fields_<i>.csv` per recorded state.
pub fn write_trajectory(dir: &Path, traj: &Trajectory) -> Result<()> {
    write_file(dir, "trajectory.csv", &trajectory_csv(traj))?;
    for (i, st) in traj.states.iter().enumerate() {
        let grid = st.grid();
        let mut out = String::from("x,u,w,v,z\n");
        for j in 0..grid.len() {
            let [u, w, v, z] = st.fields().map(|f| f.values()[j]);
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                float(grid.node(j)),
                float(u),
                float(w),
                float(v),
                float(z)
            );
        }
        write_file(dir, &format!("fields_{i}.csv"), &out)?;
    }
    Ok(())
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("delta,distance,log_delta,log_distance\n");
    for (d, e) in result.deltas.iter().zip(&result.distances) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            float(*d),
            float(*e),
            float(d.ln()),
            float(e.ln())
        );
    }
    out
}

pub fn write_sweep(dir: &Path, result: &SweepResult, aborted: Option<&str>) -> Result<()> {
    write_file(dir, "sweep.csv", &sweep_csv(result))?;
    let summary = serde_json::json!({
        "map": result.map,
        "s": result.s,
        "index": result.index,
        "region": result.region,
        "predicted_exponent": result.predicted_exponent,
        "eps_param": result.eps_param,
        "rho": result.rho,
        "horizon": result.horizon,
        "slope": result.slope,
        "pass": result.pass,
        "completed_legs": result.deltas.len(),
        "aborted": aborted,
    });
    write_file(
        dir,
        "summary.json",
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )
}

pub fn classification_csv(points: &[GridPoint]) -> String {
    let mut out = String::from("s,r_or_p,region,exponent\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            float(p.s),
            float(p.x),
            p.result.region,
            float(p.result.exponent)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(1.0), "1.0000000000000000e0");
    }
}
