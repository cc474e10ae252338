// temporary experiment: dump raw numbers around the growth site
use vlasol::scenario;
use vlasol::solver::*;
use vlasol::limiter::TvbConstants;

fn main() {
    let (mut state, speeds) = scenario::rotation_gaussian_setup(48).unwrap();
    let opts = SolverOptions::hweno(SchemeVariant::WithoutLimiter, TvbConstants{m_x:1.0,m_v:1.0});
    let dt = timestep_from_bounds(speeds.x_bound, state.grid_x.dx, speeds.y_bound, state.grid_v.dx, 1.2);
    let i = 24;
    let dump = |s: &vlasol::grid::PhaseState, tag: &str| {
        print!("{tag} f[{i},40..48]:");
        for j in 40..48 { print!(" {:+.2e}", s.f[[i,j]]); }
        print!("\n{tag} psi[{i},40..49]:");
        for m in 40..49 { print!(" {:+.2e}", s.psi[[i,m]]); }
        println!();
    };
    dump(&state, "init ");
    for k in 0..4 {
        sweep_v(&mut state, &speeds.y, dt, &opts).unwrap();
        dump(&state, &format!("sw {k} "));
    }
}
