//! Time generation over a small grid and compare running-time models.

use hypergen::validation::{bench_grid, fit_complexity, BenchRow};

fn main() -> hypergen::Result<()> {
    let rows = bench_grid(&[10_000, 30_000, 100_000, 300_000], &[2.0, 8.0, 32.0], 3.0, 1, 1, 1)?;
    println!("{}", BenchRow::CSV_HEADER);
    for r in &rows {
        println!("{}", r.to_csv_row());
    }
    if let Some(fit) = fit_complexity(&rows) {
        println!("R² for a·n·ln n + b·m + c: {:.4}", fit.n_log_n_plus_m.r_squared);
        println!("R² for a·n² + b·n + c:     {:.4}", fit.quadratic.r_squared);
    }
    Ok(())
}
