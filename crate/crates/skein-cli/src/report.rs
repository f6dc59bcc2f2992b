//! Output schema shared by the `reduce` and `basis` commands, in both the
//! JSON and the plain-text rendering. Term ordering is deterministic, so the
//! JSON bytes are stable across runs for the same input.

use std::collections::BTreeMap;

use serde::Serialize;
use skein::lens_4k::SigmaPPVector;
use skein::lens_p2::LambdaBasisVector;
use skein::s2xs1::CyclicDecomposition;

#[derive(Serialize)]
pub struct Report {
    pub manifold: String,
    pub params: BTreeMap<String, i64>,
    pub basis: Vec<String>,
    pub coords: Vec<Coord>,
    pub torsion: Vec<TorsionEntry>,
}

#[derive(Serialize)]
pub struct Coord {
    pub basis: String,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct TorsionEntry {
    pub gen: String,
    pub modulus: i64,
    pub residue: String,
}

pub fn lambda_basis_name(n: usize) -> String {
    format!("l^{n}")
}

pub fn x_lambda_basis_name(n: usize) -> String {
    format!("x*l^{n}")
}

impl Report {
    pub fn for_lens_p2(beta1: i64, nu1: i64, class: &LambdaBasisVector) -> Self {
        let mut params = BTreeMap::new();
        params.insert("beta1".into(), beta1);
        params.insert("nu1".into(), nu1);
        params.insert("p".into(), beta1);
        params.insert("q".into(), 2);
        params.insert("rank".into(), class.kappa() as i64);
        let basis: Vec<String> = (0..class.kappa()).map(lambda_basis_name).collect();
        let coords = basis
            .iter()
            .zip(class.coords())
            .map(|(b, c)| Coord { basis: b.clone(), coeff: c.to_string() })
            .collect();
        Report {
            manifold: format!("L({beta1},2)"),
            params,
            basis,
            coords,
            torsion: Vec::new(),
        }
    }

    pub fn for_lens_4k(class: &SigmaPPVector) -> Self {
        let p = class.params();
        let mut params = BTreeMap::new();
        params.insert("beta1".into(), p.beta1());
        params.insert("beta2".into(), p.beta2());
        params.insert("nu1".into(), p.nu1());
        params.insert("nu2".into(), p.nu2());
        params.insert("k".into(), p.k());
        params.insert("p".into(), 4 * p.k());
        params.insert("q".into(), 2 * p.k() + 1);
        params.insert("rank".into(), class.rank() as i64);
        let mut basis: Vec<String> = (0..class.coords0().len()).map(lambda_basis_name).collect();
        basis.extend((0..class.coords1().len()).map(x_lambda_basis_name));
        let coords = basis
            .iter()
            .zip(class.coords0().iter().chain(class.coords1()))
            .map(|(b, c)| Coord { basis: b.clone(), coeff: c.to_string() })
            .collect();
        Report {
            manifold: format!("L({},{})", 4 * p.k(), 2 * p.k() + 1),
            params,
            basis,
            coords,
            torsion: Vec::new(),
        }
    }

    pub fn for_s2xs1(beta1: i64, nu1: i64, class: &CyclicDecomposition) -> Self {
        let mut params = BTreeMap::new();
        params.insert("beta1".into(), beta1);
        params.insert("beta2".into(), -beta1);
        params.insert("nu1".into(), nu1);
        params.insert("nu2".into(), -nu1 - 1);
        params.insert("p".into(), 0);
        params.insert("q".into(), 1);
        let coords = vec![Coord {
            basis: "phi(0)".into(),
            coeff: class.free_part().to_string(),
        }];
        let mut torsion = Vec::new();
        for (i, r) in class.phi_torsion() {
            torsion.push(TorsionEntry {
                gen: format!("phi({i})"),
                modulus: r.modulus(),
                residue: r.residue().to_string(),
            });
        }
        for (i, r) in class.psi_torsion() {
            torsion.push(TorsionEntry {
                gen: format!("psi({})", i - 1),
                modulus: r.modulus(),
                residue: r.residue().to_string(),
            });
        }
        let mut basis = vec!["phi(0)".into()];
        basis.extend(torsion.iter().map(|t| t.gen.clone()));
        Report {
            manifold: "S^2 x S^1 = L(0,1)".into(),
            params,
            basis,
            coords,
            torsion,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = self.params.get("p").copied().unwrap_or_default();
        let q = self.params.get("q").copied().unwrap_or_default();
        out.push_str(&format!("manifold: {} (p={}, q={})\n", self.manifold, p, q));
        if let Some(rank) = self.params.get("rank") {
            out.push_str(&format!("rank: {rank}\n"));
        }
        out.push_str(&format!("basis: {}\n", self.basis.join(", ")));
        if !self.coords.is_empty() {
            out.push_str("coords:\n");
            for c in &self.coords {
                out.push_str(&format!("  {}: {}\n", c.basis, c.coeff));
            }
        }
        if self.torsion.iter().any(|t| !t.residue.is_empty()) {
            out.push_str("torsion:\n");
            for t in &self.torsion {
                out.push_str(&format!(
                    "  {}: {} mod (1-A^{})\n",
                    t.gen, t.residue, t.modulus
                ));
            }
        }
        out
    }
}
