//! Deliberate corruptions used to show that the checks can fail.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Omit the `1/d` in the fully specialized residue datum.
    DropInverseD,
    /// Omit `1/(d-l+1)` in every residue datum.
    DropLevelNormalizer,
}

impl Fault {
    pub const ALL: [Fault; 2] = [Fault::DropInverseD, Fault::DropLevelNormalizer];

    pub fn name(self) -> &'static str {
        match self {
            Fault::DropInverseD => "drop-inverse-d",
            Fault::DropLevelNormalizer => "drop-level-normalizer",
        }
    }

    /// Whether the `1/(d-l+1)` factor at level `l` is omitted.
    pub fn drops_normalizer(fault: Option<Fault>, l: u32) -> bool {
        match fault {
            Some(Fault::DropInverseD) => l == 1,
            Some(Fault::DropLevelNormalizer) => true,
            None => false,
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault '{s}'"))
    }
}
