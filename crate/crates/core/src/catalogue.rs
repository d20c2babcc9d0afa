//! The big table of connected complex homogeneous surfaces, one row per action.

use serde::Serialize;

use crate::actions::{quotient_policy, FamilyId, QuotientPolicy};

/// Marker for rows whose stabilizer is left open in the source table.
pub const UNSPECIFIED: &str = "unspecified-in-paper";

/// One row of the big table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogueRow {
    pub label: String,
    /// The family row this quotient hangs under, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    pub surface: String,
    pub group: String,
    pub stabilizer: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub conditions: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub parameters: String,
    /// Present on family rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_policy: Option<QuotientPolicy>,
    pub anchor: String,
}

struct Raw {
    label: &'static str,
    parent: Option<&'static str>,
    surface: &'static str,
    group: &'static str,
    stabilizer: &'static str,
    conditions: &'static str,
    parameters: &'static str,
    anchor: &'static str,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    label: &'static str,
    parent: Option<&'static str>,
    surface: &'static str,
    group: &'static str,
    stabilizer: &'static str,
    conditions: &'static str,
    parameters: &'static str,
    anchor: &'static str,
) -> Raw {
    Raw { label, parent, surface, group, stabilizer, conditions, parameters, anchor }
}

const FREE: &str = "Quotient-free actions";
const BB1: &str = "Bβ1: constant coefficient linear ODE";
const BB2: &str = "Bβ2: constant coefficient linear ODE with rescaling";
const BG12: &str = "Bγ1 and Bγ2";
const BG3: &str = "Bγ3";
const BG4: &str = "Bγ4: restricting line bundles to C";
const BD12: &str = "The big table";
const BD34: &str = "Bδ3, Bδ4: the total space of a holomorphic line bundle on the projective line";
const C2S: &str = "C2: translation times affine line";
const C5S: &str = "C5: projective times translation line";
const C8S: &str = "C8: affine plane with 1-dimensional stabilizer";
const C9S: &str = "C9: the affine quadric surface";
const D1S: &str = "D1: the translation plane";
const D2S: &str = "D2: the affine group";

const DEG: &str = "deg D ≥ 2";
const DIV: &str = "D: effective divisor on C";
const N: &str = "n ≥ 1";
const UAFF_COVER: &str = "uAff(C) → G′ → Aff(C)";

#[rustfmt::skip]
const ROWS: &[Raw] = &[
    row("A1", None, "P²", "PSL(3,C)", "[[a00,a01,a02],[0,a11,a12],[0,a21,a22]]", "", "", FREE),
    row("A2", None, "C²", "GL(2,C) ⋉ C²", "GL(2,C)", "", "", FREE),
    row("A3", None, "C²", "SL(2,C) ⋉ C²", "SL(2,C)", "", "", FREE),
    row("Bβ1", None, "C²", "G_D", "H_D", DEG, DIV, BB1),
    row("Bβ1A0", Some("Bβ1"), "C × (C/Δ)", "G_D", "H_D", DEG, "D, Δ ⊂ C discrete", BB1),
    row("Bβ1A1", Some("Bβ1"), "C × (C/Δ)", "G_D/Δ", "H_D/Δ", DEG, "D, Δ ⊂ C discrete", BB1),
    row("Bβ1B0", Some("Bβ1"), "C^× × C", "G_D/⟨(n,0)⟩", "H_D", DEG, "D, n, λ", BB1),
    row("Bβ1B1", Some("Bβ1"), "C^× × C", "G_D", "H_D", DEG, "D, n, λ", BB1),
    row("Bβ1C", Some("Bβ1"), "C^× × C", "G_D", "H_D", DEG, "D, n, m", BB1),
    row("Bβ1D", Some("Bβ1"), "C^× × C^×", "G_D/⟨(n,0),(0,1)⟩", "H_D", DEG, "D ∋ 0, n", BB1),
    row("Bβ1E", Some("Bβ1"), "C^× × C^×", "G_D/⟨(n,s),(0,1)⟩", "H_D", DEG, "D, n, m, s", BB1),
    row("Bβ1F", Some("Bβ1"), "C^× → X′ → C^×", "G_D", "H_D", DEG, "D, n, m", BB1),
    row("Bβ1G", Some("Bβ1"), "C^× × (C/Λ)", "G_D", "H_D", DEG, "D ∋ 0, n, Λ", BB1),
    row("Bβ1H", Some("Bβ1"), "C^× × (C/Λ)", "G_D", "H_D", DEG, "D, n, m, s, Λ", BB1),
    row("Bβ1I", Some("Bβ1"), "C/Λ → X′ → C^×", "G_D", "H_D", DEG, "D, n, λ, Λ", BB1),
    row("Bβ2", None, "C²", "rG_D", "rH_D", DEG, DIV, BB2),
    row("Bβ2′", Some("Bβ2"), "C^× × C", "rG_D/⟨(n,1,0)⟩", UNSPECIFIED, DEG, "D with Q_D ≠ 0, n", BB2),
    row("Bγ1", None, "C²", "{e^{-a(n+α)/n}[[e^a,b],[0,1]]} ⋉ Sym^n(C²)*", "(g,p), b=0, p(1,0)=0", "α ≠ 1", "n ≥ 1, c ≠ 0", BG12),
    row("Bγ2", None, "C²", "{e^{-a(n+1)/n}[[e^a,b],[0,1]]} ⋉ Sym^n(C²)*", "(g,p), b=0, p(1,0)=0", "", N, BG12),
    row("Bγ2′", Some("Bγ2"), "C × (C/Δ)", "{e^{-a(n+1)/n}[[e^a,b],[0,1]]} ⋉ (Sym^n(C²)*/Δ)", "(g,p), b=0, p(1,0)=0", "", "n ≥ 1, Δ ⊂ C discrete", BG12),
    row("Bγ3", None, "C²", "{([[1,b],[0,e^{-a}]], Z2 r(Z1,Z2) + a Z1^n) : deg r = n-1}", "b=0, r(0,1)=0", "", N, BG3),
    row("Bγ4", None, "C²", "{[[*,*],[0,*]]/Z_n} ⋉ Sym^n(C²)*", "(g,p), b=0, p(0,1)=0", "", N, BG4),
    row("Bδ1", None, "C² ∖ 0", "SL(2,C)", "[[1,b],[0,1]]", "", "", BD12),
    row("Bδ1′", Some("Bδ1"), "(C² ∖ 0)/z∼λz", "SL(2,C)", "[[1,b],[0,1]]", "|λ| < 1", "λ", BD12),
    row("Bδ2", None, "C² ∖ 0", "GL(2,C)", "[[1,b],[0,c]]", "", "", BD12),
    row("Bδ2′", Some("Bδ2"), "(C² ∖ 0)/z∼λz", "GL(2,C)/⟨λI⟩", "[[1,b],[0,c]]", "|λ| < 1", "λ", BD12),
    row("Bδ3", None, "O(n)", "(SL(2,C)/±^n) ⋉ Sym^n(C²)*", "([[a,b],[0,1/a]], p), p(1,0) = 1 - 1/a^n", "", N, BD34),
    row("Bδ4", None, "O(n)", "(GL(2,C)/Z_n) ⋉ Sym^n(C²)*", "([[a,b],[0,d]], p), p(1,0) = 1 - 1/a^n", "", N, BD34),
    row("C2", None, "C²", "C × Aff(C)", "{0} × C^×", "", "", C2S),
    row("C2′", Some("C2"), "(C/Δ) × C", "(C/Δ) × Aff(C)", "{0} × C^×", "", "Δ ⊂ C discrete", C2S),
    row("C3", None, "C²", "Aff(C) × Aff(C)", "C^× × C^×", "", "", FREE),
    row("C5", None, "P¹ × C", "PSL(2,C) × C", "[[a,b],[0,1/a]]", "", "", C5S),
    row("C5′", Some("C5"), "P¹ × (C/Δ)", "PSL(2,C) × (C/Δ)", "[[a,b],[0,1/a]]", "", "Δ ⊂ C discrete", C5S),
    row("C6", None, "P¹ × C", "PSL(2,C) × (C^× ⋉ C)", "[[a,b],[0,1/a]] × C^×", "", "", FREE),
    row("C7", None, "P¹ × P¹", "PSL(2,C) × PSL(2,C)", "[[a,b],[0,1/a]] × [[c,d],[0,1/c]]", "", "", FREE),
    row("C8", None, "C²", "{diag(e^t, e^{αt})} ⋉ C²", "diag(e^t, e^{αt})", "α ≠ 1", "α", C8S),
    row("C9", None, "P¹ × P¹ ∖ Δ", "PSL(2,C)", "[[a,0],[0,1/a]]", "", "", C9S),
    row("C9′", Some("C9"), "P² ∖ (b² = 4ac)", "PSL(2,C)", "[[a,0],[0,1/a]], [[0,1],[1,0]]", "", "", C9S),
    row("D1", None, "C²", "C²", "0", "", "", D1S),
    row("D1_1", Some("D1"), "C^× × C", "C^× × C", "0", "", "", D1S),
    row("D1_2", Some("D1"), "C^× × C^×", "C^× × C^×", "0", "", "", D1S),
    row("D1_3", Some("D1"), "(C/Δ) × C", "(C/Δ) × C", "0", "", "τ", D1S),
    row("D1_4", Some("D1"), "C^× × (C/Δ)", "C^× × (C/Δ)", "0", "", "τ", D1S),
    row("D1_5", Some("D1"), "C^× → X′ → C/Δ", "C^× → G′ → C/Δ", "0", "", "τ, σ", D1S),
    row("D1_6", Some("D1"), "C²/Λ", "C²/Λ", "0", "", "period matrix", D1S),
    row("D2", None, "C²", "uAff(C)", "0", "", "", D2S),
    row("D2_1", Some("D2"), "C × C^×", "uAff(C)", "(0,n)", "", "", D2S),
    row("D2_2", Some("D2"), "C × (C/Λ)", "uAff(C)", "(0,n+mτ)", "E any elliptic curve", "τ", D2S),
    row("D2_3", Some("D2"), "C^× × C", "uAff(C)", UNSPECIFIED, "", "", D2S),
    row("D2_4", Some("D2"), "C^× × C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_5", Some("D2"), "C^× × E_τ", UAFF_COVER, UNSPECIFIED, "", "τ", D2S),
    row("D2_6", Some("D2"), "C^× × C", UAFF_COVER, UNSPECIFIED, "", "k", D2S),
    row("D2_7", Some("D2"), "C^× → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_8", Some("D2"), "E_τ → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "τ", D2S),
    row("D2_9", Some("D2"), "E_i → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_10", Some("D2"), "E_ω → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_11", Some("D2"), "E_ω → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_12", Some("D2"), "E_ω → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_13", Some("D2"), "E_ω → X′ → C^×", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D2_14", Some("D2"), "(C/Λ) × C", UAFF_COVER, UNSPECIFIED, "", "", D2S),
    row("D3", None, "C²", "C^× ⋉ C²", "C^×", "", "", FREE),
];

fn materialize(r: &Raw) -> CatalogueRow {
    let policy = match r.parent {
        None => r.label.parse::<FamilyId>().ok().map(|f| quotient_policy(&f)),
        Some(_) => None,
    };
    CatalogueRow {
        label: r.label.into(),
        parent: r.parent.map(Into::into),
        surface: r.surface.into(),
        group: r.group.into(),
        stabilizer: r.stabilizer.into(),
        conditions: r.conditions.into(),
        parameters: r.parameters.into(),
        quotient_policy: policy,
        anchor: r.anchor.into(),
    }
}

/// Rows in table order, optionally restricted to labels starting with `filter`.
pub fn enumerate_catalogue(filter: Option<&str>) -> Vec<CatalogueRow> {
    ROWS.iter()
        .filter(|r| filter.is_none_or(|p| r.label.starts_with(p)))
        .map(materialize)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::FAMILY_LABELS;
    use std::collections::HashSet;

    #[test]
    fn filter_c() {
        let labels: Vec<_> = enumerate_catalogue(Some("C")).into_iter().map(|r| r.label).collect();
        assert_eq!(labels, ["C2", "C2′", "C3", "C5", "C5′", "C6", "C7", "C8", "C9", "C9′"]);
        assert!(enumerate_catalogue(Some("ZZZ")).is_empty());
    }

    #[test]
    fn labels_unique_and_families_present() {
        let rows = enumerate_catalogue(None);
        assert_eq!(rows.len(), 61);
        let set: HashSet<_> = rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(set.len(), rows.len());
        for f in FAMILY_LABELS {
            let r = rows.iter().find(|r| r.label == f).unwrap();
            assert!(r.parent.is_none() && r.quotient_policy.is_some(), "{f}");
        }
    }

    #[test]
    fn quotient_rows_match_policies() {
        let rows = enumerate_catalogue(None);
        for r in rows.iter().filter(|r| r.parent.is_none()) {
            let listed: Vec<_> = match r.quotient_policy.as_ref().unwrap() {
                QuotientPolicy::NoQuotients => vec![],
                QuotientPolicy::Policy { quotients, .. } => quotients.clone(),
            };
            let children: Vec<_> = rows
                .iter()
                .filter(|c| c.parent.as_deref() == Some(r.label.as_str()))
                .map(|c| c.label.clone())
                .collect();
            assert_eq!(listed, children, "{}", r.label);
        }
    }

    #[test]
    fn unknown_stabilizers_are_marked() {
        let rows = enumerate_catalogue(None);
        let marked: Vec<_> = rows.iter().filter(|r| r.stabilizer == UNSPECIFIED).map(|r| r.label.as_str()).collect();
        assert_eq!(marked.len(), 13);
        assert_eq!(marked[0], "Bβ2′");
        assert!(!marked.contains(&"D2_2"));
    }
}
