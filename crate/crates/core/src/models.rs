//! Model files shipped with the crate.

pub const BUNDLED: &[(&str, &str)] = &[
    ("cp2", include_str!("../models/cp2.lie")),
    ("cp3", include_str!("../models/cp3.lie")),
    ("product_s2s2", include_str!("../models/product_s2s2.lie")),
    ("s2xs2", include_str!("../models/s2xs2.lie")),
    ("s3xs3", include_str!("../models/s3xs3.lie")),
    ("sphere2", include_str!("../models/sphere2.lie")),
    ("sphere3", include_str!("../models/sphere3.lie")),
    ("sphere5", include_str!("../models/sphere5.lie")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}
