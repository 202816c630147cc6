// Draw a scenario, store it in the text matrix format and solve it back from
// disk, which is what `pabeam solve --matrix --powers` does.

use pabeam::beamformers::{solve_pac, PowerBudget, SolverOptions};
use pabeam::channel::{
    powers_to_text, read_matrix, read_powers, sample_scenario, write_matrix, CellConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = CellConfig {
        num_ers: 4,
        num_antennas: 3,
        seed: 42,
        ..CellConfig::default()
    };
    let scenario = sample_scenario(&cfg);
    for (k, d) in scenario.distances_m.iter().enumerate() {
        let gain: f64 = scenario.h.row(k).iter().map(|z| z.norm_sqr()).sum();
        println!("receiver {k}: {d:6.2} m, |h_k|^2 = {gain:.3e}");
    }

    let dir = tempfile::tempdir()?;
    let (hpath, ppath) = (dir.path().join("h.txt"), dir.path().join("p.txt"));
    write_matrix(&hpath, &scenario.h)?;
    std::fs::write(&ppath, powers_to_text(&[1.0 / 3.0; 3]))?;
    print!("{}", std::fs::read_to_string(&hpath)?);

    let h = read_matrix(&hpath)?;
    assert_eq!(h, scenario.h);
    let p = PowerBudget::new(read_powers(&ppath)?)?;
    let rep = solve_pac(&h, &p, &SolverOptions::default())?;
    println!(
        "harvested {:.6} mW, certified {}",
        rep.objective_mw(),
        rep.certified
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
