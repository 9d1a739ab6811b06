use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const WHITE: Rgb = Rgb::new(255, 255, 255);
    pub const BLACK: Rgb = Rgb::new(0, 0, 0);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    /// Parses `#rrggbb`.
    pub fn from_hex(s: &str) -> Option<Self> {
        let s = s.strip_prefix('#')?;
        if s.len() != 6 {
            return None;
        }
        let v = u32::from_str_radix(s, 16).ok()?;
        Some(Rgb::new((v >> 16) as u8, (v >> 8) as u8, v as u8))
    }

    fn from_hsv(h: f64, s: f64, v: f64) -> Self {
        let c = v * s;
        let hp = (h.rem_euclid(360.0)) / 60.0;
        let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
        let (r, g, b) = match hp as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let mch = v - c;
        let q = |u: f64| ((u + mch) * 255.0).round().clamp(0.0, 255.0) as u8;
        Rgb::new(q(r), q(g), q(b))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

const TABLEAU10: [Rgb; 10] = [
    Rgb::new(0x4e, 0x79, 0xa7),
    Rgb::new(0xf2, 0x8e, 0x2b),
    Rgb::new(0xe1, 0x57, 0x59),
    Rgb::new(0x76, 0xb7, 0xb2),
    Rgb::new(0x59, 0xa1, 0x4f),
    Rgb::new(0xed, 0xc9, 0x48),
    Rgb::new(0xb0, 0x7a, 0xa1),
    Rgb::new(0xff, 0x9d, 0xa7),
    Rgb::new(0x9c, 0x75, 0x5f),
    Rgb::new(0xba, 0xb0, 0xac),
];

/// `k` pairwise distinct cluster colors.
///
/// The first ten are the Tableau 10 palette; further colors step around the
/// hue circle by the golden angle.
pub fn default_palette(k: usize) -> Vec<Rgb> {
    let mut out: Vec<Rgb> = Vec::with_capacity(k);
    for i in 0..k {
        let mut c = if i < TABLEAU10.len() {
            TABLEAU10[i]
        } else {
            let band = (i / TABLEAU10.len()) % 3;
            Rgb::from_hsv(i as f64 * 137.507_764, 0.7, 0.5 + 0.15 * band as f64)
        };
        while out.contains(&c) {
            c.b = c.b.wrapping_add(1);
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_is_distinct() {
        let p = default_palette(300);
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                assert_ne!(p[i], p[j]);
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let c = Rgb::new(0x12, 0xab, 0xff);
        assert_eq!(c.to_string(), "#12abff");
        assert_eq!(Rgb::from_hex("#12abff"), Some(c));
        assert_eq!(Rgb::from_hex("12abff"), None);
        assert_eq!(Rgb::from_hex("#12ab"), None);
    }
}
