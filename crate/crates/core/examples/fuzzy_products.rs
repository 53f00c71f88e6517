//! Exact rational fuzzy subsets: sums, intersections and the two
//! h-products.

use gamma_hemiring::corpus;
use gamma_hemiring::fuzzy::{fuzzy_sum, generalized_h_product, simple_h_product, FuzzySubset, Rational01};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::structure::as_product_structure;
use gamma_hemiring::Result;

fn fz(p: &gamma_hemiring::structure::ProductStructure, vals: &[&str]) -> Result<FuzzySubset> {
    let values = vals.iter().map(|v| v.parse()).collect::<Result<Vec<Rational01>>>()?;
    Ok(FuzzySubset::new(p.id().clone(), values))
}

pub fn main() -> Result<()> {
    let g = corpus::structure("Z4", &Limits::default())?;
    let p = as_product_structure(&g);
    let labels = p.carrier().labels();

    let mu = fz(&p, &["1", "1/3", "2/3", "1/3"])?;
    let nu = fz(&p, &["1", "0", "1/2", "0"])?;
    println!("mu       = {}", mu.display(labels));
    println!("nu       = {}", nu.display(labels));
    println!("mu ∩ nu  = {}", mu.intersect(&nu)?.display(labels));
    println!("mu ⊕ nu  = {}", fuzzy_sum(p.carrier(), &mu, &nu)?.display(labels));
    println!("mu Γh nu = {}", simple_h_product(&p, &mu, &nu)?.display(labels));
    println!("mu ∘h nu = {}", generalized_h_product(&p, &mu, &nu)?.display(labels));

    for t in mu.distinct_values() {
        let level = mu.level_set(t);
        let members: Vec<&str> = (0..4)
            .filter(|&i| level.members[i])
            .map(|i| labels[i].as_str())
            .collect();
        println!("mu ≥ {t}: {{{}}}", members.join(","));
    }
    Ok(())
}
