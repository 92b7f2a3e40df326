//! SLIR encodings of the case-study apps shipped with the crate.

pub const ROIDSEC: &str = include_str!("../data/corpus/Roidsec.slir");
pub const STEAM: &str = include_str!("../data/corpus/Steam.slir");
pub const BEITA: &str = include_str!("../data/corpus/Beita_com_beita_contact.slir");
pub const OVERLAY: &str = include_str!("../data/corpus/Overlay_android_samp.slir");

/// `(app name, source)` in file-name order.
pub const APPS: [(&str, &str); 4] = [
    ("Beita_com_beita_contact", BEITA),
    ("Overlay_android_samp", OVERLAY),
    ("Roidsec", ROIDSEC),
    ("Steam", STEAM),
];
