//! Sweep a slice of channel space and render the CP region.
//!
//! `cargo run --release --example region_scan -- out_dir`

use qutrit_cp::scan::{parse_bindings, preset, run_scan, Preset, ScanMethod, ScanSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().display().to_string());
    std::fs::create_dir_all(&dir)?;

    let parsed = parse_bindings("L3=X; L8=Y; L1=X*Y; L2=X*Y; L4=X*Y; L5=X*Y; L6=X*Y; L7=X*Y")?;
    let mut spec = ScanSpec::new(parsed.bindings);
    spec.resolution = (128, 128);
    spec.method = ScanMethod::Analytic;
    let grid = run_scan(&spec)?;
    println!(
        "custom slice: {} of {} cells CP, contiguous rows/columns: {}",
        grid.cp_count(),
        grid.cells.len(),
        grid.is_axis_contiguous()
    );
    std::fs::write(format!("{dir}/custom.pgm"), grid.to_pgm())?;

    for p in [Preset::Fig1, Preset::Fig7] {
        let mut spec = preset(p);
        spec.resolution = (96, 96);
        let grid = run_scan(&spec)?;
        std::fs::write(format!("{dir}/{p}.csv"), grid.to_csv())?;
        std::fs::write(format!("{dir}/{p}.pgm"), grid.to_pgm())?;
        println!(
            "{p}: {} CP cells; wrote {dir}/{p}.csv and .pgm",
            grid.cp_count()
        );
    }
    Ok(())
}
