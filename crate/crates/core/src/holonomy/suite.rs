use super::lie::{stabilizer, LieAlgebraSpan};
use super::panel::ricci_panel;
use super::reduce::{reduce_system, NodeKind};
use super::HolonomySystem;
use crate::curvature::{bianchi_b1, split_s2_lambda11, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{bul, comm, proj, Form};
use crate::report::ResidualReport;
use crate::tol;

/// Definition clauses, 𝔥 ⊆ 𝔤 ⊆ λ^{1,1}, the Ricci panel and one line per
/// leaf of the factorization tree.
pub fn holonomy_suite(sys: &HolonomySystem, name: &str, seed: u64, tol: f64) -> Result<ResidualReport> {
    let n = sys.dim();
    let scale = 1.0 + sys.curvature().norm();
    let mut rep = ResidualReport::new("holonomy", name, sys.digest());
    for (clause, r) in sys.checks() {
        rep.check(clause, "defining clause of a holonomy system", *r, tol * scale);
    }
    let h = LieAlgebraSpan::generated(n, sys.curvature().rows(), tol::RANK, tol);
    let g = stabilizer(sys.psi(), tol::RANK);
    rep.check("𝔥 closed", "𝔥 = Lie{R(x,y)} is closed under brackets", h.closure_residual, tol * scale);
    rep.check("𝔥 ⊆ 𝔤", "𝔤 = {α : [α, ψ⁺] = 0}", g.containment_defect(&h), tol * scale);
    let l11 = g.basis.iter().map(|a| a.dist(&proj(a, 1, 1))).fold(0.0, f64::max);
    rep.check("𝔤 ⊆ λ^{1,1}", "the isotropy algebra of a strict ψ⁺ is of type (1,1)", l11, tol);

    let panel = ricci_panel(sys, None, name, tol)?;
    rep.extend(panel.report);

    let tree = reduce_system(sys, seed, tol)?;
    for (k, leaf) in tree.leaves().into_iter().enumerate() {
        let kind = match leaf.kind {
            NodeKind::Irreducible => "irreducible",
            NodeKind::Special => "special",
            NodeKind::Split => "split",
        };
        let worst = leaf.certificates.iter().map(|(_, v)| *v).fold(0.0, f64::max);
        rep.check(&format!("leaf {} ({kind}, dim {})", k + 1, leaf.dim), "worst certificate residual of the leaf", worst, tol * scale);
    }
    rep.check("factorization tree", "worst certificate residual over all nodes", tree.worst_certificate(), tol * scale);
    Ok(rep)
}

/// Residuals of every defining clause for a candidate (ψ⁺, R), without
/// refusing the input. R is projected onto S²(λ^{1,1}) before the split.
pub fn clause_report(psi: &Form, r: &CurvatureLike, name: &str, tol: f64) -> Result<ResidualReport> {
    if psi.degree() != 3 || psi.dim() != r.dim() {
        return Err(Error::Input(format!("clause report needs a 3-form and a curvature tensor of the same dimension ({name})")));
    }
    let mut rep = ResidualReport::new("holonomy", name, crate::report::digest(format!("{:?}{:?}", psi.coeffs(), r.rows()).as_bytes()));
    let pn = psi.norm();
    let scale = 1.0 + r.norm();
    rep.check("ψ⁺ ≠ 0", "|ψ⁺| must exceed the tolerance (residual 1 when it does not)", if pn > tol { 0.0 } else { 1.0 }, 0.5);
    rep.check("ψ⁺ ∈ λ³", "defining clause of a holonomy system", psi.dist(&proj(psi, 0, 3)), tol * (1.0 + pn));
    let sym = r.add(&r.transpose()).scaled(0.5);
    let q = sym.map_values(|v| proj(v, 1, 1)).transpose().map_values(|v| proj(v, 1, 1));
    rep.check("R ∈ S²(λ^{1,1})", "defining clause of a holonomy system", r.dist(&q), tol * scale);
    let (rk, omega) = split_s2_lambda11(&q, f64::INFINITY)?;
    rep.check("Ω = ½ψ⁺∙ψ⁺", "defining clause of a holonomy system", omega.dist(&bul(psi, psi).scaled(0.5)), tol * scale);
    rep.check("R^K ∈ 𝒦(𝔲(m))", "defining clause of a holonomy system", bianchi_b1(&rk).norm(), tol * scale);
    let inv = r.rows().iter().map(|row| comm(row, psi).norm()).fold(0.0, f64::max);
    rep.check("[R(x,y), ψ⁺] = 0", "defining clause of a holonomy system", inv, tol * scale * (1.0 + pn));
    Ok(rep)
}
