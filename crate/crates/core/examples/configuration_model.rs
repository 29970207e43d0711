//! Samples a 3-regular configuration model and a Poisson-cloned ER graph and
//! checks the local structure the mixing results rely on.

use fkmixer::graphs::{
    effective_offspring, has_volume_growth, is_lr_treelike, sample_configuration_model,
    sample_er_poisson_cloning, DegreeSequence,
};

fn main() -> fkmixer::Result<()> {
    let dn = DegreeSequence::regular(2000, 3)?;
    let offspring = effective_offspring(&dn)?;
    let regular = sample_configuration_model(&dn, 7)?;
    let er = sample_er_poisson_cloning(2000, 2.0, 7)?;

    for (name, g, gamma) in [("3-regular", &regular, offspring.mean()), ("ER(2)", &er, 2.0)] {
        let loops = (0..g.edge_count()).filter(|&e| g.is_self_loop(e)).count();
        let tl = is_lr_treelike(g, 1, 3);
        let growth = has_volume_growth(g, gamma + 0.5, 0.1);
        println!(
            "{name}: n={} m={} self-loops={loops} simple={} (1,3)-treelike={} (excess {}) growth ok={}",
            g.n(),
            g.edge_count(),
            g.is_simple(),
            tl.treelike,
            tl.max_excess,
            growth.ok,
        );
    }
    Ok(())
}
