//! Index of the implemented kernels with the equation numbers of the
//! published closed forms, and notes on transcription errors in those forms.

use std::fmt::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub key: &'static str,
    pub quantity: &'static str,
    pub source: &'static str,
    pub dimension: u8,
    pub function: &'static str,
    pub equation: &'static str,
}

impl fmt::Display for CatalogueEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {:<14} {}D {:<7} {:<32} {}", self.key, self.quantity, self.dimension, self.source, self.function, self.equation)
    }
}

const fn entry(
    key: &'static str,
    quantity: &'static str,
    source: &'static str,
    dimension: u8,
    function: &'static str,
    equation: &'static str,
) -> CatalogueEntry {
    CatalogueEntry { key, quantity, source, dimension, function, equation }
}

pub const ENTRIES: [CatalogueEntry; 16] = [
    entry("displacement-force-3d", "U", "force", 3, "point_force_kernels_3d", "Eq. (83)"),
    entry("rotation-force-3d", "Omega", "force", 3, "point_force_kernels_3d", "Eq. (84)"),
    entry("force-stress-force-3d", "Sigma", "force", 3, "point_force_kernels_3d", "Eq. (85), as Eq. (74)"),
    entry("couple-stress-force-3d", "Mu", "force", 3, "point_force_kernels_3d", "Eq. (86)"),
    entry("displacement-couple-3d", "U", "couple", 3, "point_couple_kernels_3d", "Eq. (112), Eq. (92)"),
    entry("rotation-couple-3d", "Omega", "couple", 3, "point_couple_kernels_3d", "Eq. (113)"),
    entry("force-stress-couple-3d", "Sigma", "couple", 3, "point_couple_kernels_3d", "Eq. (114), as Eq. (103)"),
    entry("couple-stress-couple-3d", "Mu", "couple", 3, "point_couple_kernels_3d", "Eq. (115)"),
    entry("displacement-force-2d", "U", "force", 2, "line_force_kernels_2d", "Eq. (182)"),
    entry("rotation-force-2d", "Omega", "force", 2, "line_force_kernels_2d", "Eq. (183)"),
    entry("force-stress-force-2d", "Sigma", "force", 2, "line_force_kernels_2d", "Eq. (184)"),
    entry("couple-stress-force-2d", "Mu", "force", 2, "line_force_kernels_2d", "Eq. (185)"),
    entry("displacement-couple-2d", "U", "couple", 2, "line_couple_kernels_2d", "Eq. (205), Eq. (191)"),
    entry("rotation-couple-2d", "Omega", "couple", 2, "line_couple_kernels_2d", "Eq. (206)"),
    entry("force-stress-couple-2d", "Sigma", "couple", 2, "line_couple_kernels_2d", "Eq. (207)"),
    entry("couple-stress-couple-2d", "Mu", "couple", 2, "line_couple_kernels_2d", "Eq. (208)"),
];

pub const ERRATA: [(&str, &str); 6] = [
    (
        "Eq. (85)",
        "trailing a_q factors and x_j delta_iq in the last term are slips; implemented with x_i delta_jq as in Eq. (74)",
    ),
    ("Eq. (88)", "bracket placement is garbled; moment-traction implemented as n x Mu, Eq. (76)"),
    ("Eqs. (114), (116)", "symbol e_jipq read as e_jpq, as in Eq. (103)"),
    ("Eqs. (173), (174)", "sign of the leading 1/(4 pi (1 - nu) r) term is reversed; Eqs. (184), (186) sign used"),
    ("Eqs. (184), (186)", "mixed rho and q subscripts unified as the load direction rho"),
    ("Eqs. (80), (82)", "both name their kernel M_iq; here Mu is the couple-stress and M the moment-traction"),
];

pub fn entries() -> &'static [CatalogueEntry] {
    &ENTRIES
}

/// Plain-text catalogue: one line per kernel followed by the errata list.
pub fn render() -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kernels ({})", ENTRIES.len());
    for e in &ENTRIES {
        let _ = writeln!(s, "  {e}");
    }
    let _ = writeln!(s, "errata ({})", ERRATA.len());
    for (eq, note) in &ERRATA {
        let _ = writeln!(s, "  {eq}: {note}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_distinct_entries() {
        let mut keys: Vec<_> = ENTRIES.iter().map(|e| e.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 16);
    }

    #[test]
    fn render_mentions_force_displacement_and_errata() {
        let text = render();
        assert!(text.lines().any(|l| l.contains("displacement-force-3d") && l.contains("Eq. (83)")));
        assert!(text.contains("Eq. (85):"));
    }
}
