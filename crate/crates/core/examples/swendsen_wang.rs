//! Swendsen-Wang and single-site Glauber on the same 3-regular graph,
//! tracking the majority fraction.

use fkmixer::dynamics::{sw_step, PottsChain};
use fkmixer::graphs::{sample_configuration_model, DegreeSequence};
use fkmixer::rc::PottsConfiguration;
use fkmixer::rng::from_seed;

fn majority(sigma: &PottsConfiguration) -> f64 {
    let mut counts = vec![0usize; sigma.q() as usize];
    for &s in sigma.spins() {
        counts[s as usize] += 1;
    }
    *counts.iter().max().unwrap() as f64 / sigma.len() as f64
}

fn main() -> fkmixer::Result<()> {
    let n = 1000;
    let g = sample_configuration_model(&DegreeSequence::regular(n, 3)?, 2)?;
    let (q, beta) = (3, 1.0);
    let mut rng = from_seed(2);
    let mut sw = PottsConfiguration::constant(q, n, 0)?;
    let mut glauber = PottsChain::new(&g, beta, PottsConfiguration::constant(q, n, 0)?)?;
    println!("round  sw_majority  glauber_majority");
    for round in 1..=20 {
        sw_step(&g, &mut sw, beta, &mut rng);
        glauber.run(n as u64, &mut rng);
        println!("{round:>5}  {:>11.3}  {:>16.3}", majority(&sw), majority(glauber.config()));
    }
    Ok(())
}
