//! Normalisation constants of the curvature embeddings and decompositions.

/// Ω̂(x,y) = HAT · (Ω(x,y) + Ω(Jx,Jy)).
pub const HAT: f64 = -0.25;
/// R_Ω(x,y) = Ω(Jx,Jy) − R_OMEGA_THIRD · Ω(x,y).
pub const R_OMEGA_THIRD: f64 = 1.0 / 3.0;
/// S̊ = RING · (SJX∧Y + X∧SJY + SX∧JY + JX∧SY).
pub const RING: f64 = 0.5;
/// Ω̃(X,Y) = TILDE · (Ω(JX,JY) − Ω(X,Y)).
pub const TILDE: f64 = 0.25;
/// Weight of the T^{2,2}, T^{1,3} corrections in 𝓡^a and 𝓡^m.
pub const TORSION_HALF: f64 = 0.5;
/// Weight of 𝓡^a in 𝓡 = 𝓡^K + Ω̂ + ½𝓡^a + 𝓡^m.
pub const RA_WEIGHT: f64 = 0.5;
/// Ω is recovered from b₁ through the total alternation: a(x ↦ x⌟Ω) = 4Ω.
pub const ALT_INVERSE: f64 = 0.25;
