use std::fmt;

/// A formal variable. Packed as `kind << 24 | a << 12 | b` so ordering and
/// hashing stay cheap; the derived order is the variable order used by the
/// graded-lex term order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    /// Matrix entry e_ij of gl_n (1-based).
    E(u16, u16),
    X(u16),
    Y(u16),
    Lambda(u16),
    Zeta(u16),
    W(u16),
    T,
    /// Stands for t^{-1} in Laurent expansions in t.
    TInv,
    Z,
    Tau,
    Mu,
    /// Coordinate along the k-th basis element of sp_2n (0-based).
    Sp(u16),
    V(u16),
    /// Slice matrix entry y_ij.
    SliceE(u16, u16),
    /// Slice vector entry y_j.
    SliceV(u16),
}

const K_E: u32 = 0;
const K_X: u32 = 1;
const K_Y: u32 = 2;
const K_LAMBDA: u32 = 3;
const K_ZETA: u32 = 4;
const K_W: u32 = 5;
const K_T: u32 = 6;
const K_TINV: u32 = 7;
const K_Z: u32 = 8;
const K_TAU: u32 = 9;
const K_MU: u32 = 10;
const K_SP: u32 = 11;
const K_V: u32 = 12;
const K_SLICE_E: u32 = 13;
const K_SLICE_V: u32 = 14;

impl Var {
    const fn pack(kind: u32, a: u16, b: u16) -> Var {
        Var(kind << 24 | (a as u32) << 12 | b as u32)
    }

    pub const fn e(i: usize, j: usize) -> Var {
        Var::pack(K_E, i as u16, j as u16)
    }
    pub const fn x(i: usize) -> Var {
        Var::pack(K_X, i as u16, 0)
    }
    pub const fn y(i: usize) -> Var {
        Var::pack(K_Y, i as u16, 0)
    }
    pub const fn lambda(i: usize) -> Var {
        Var::pack(K_LAMBDA, i as u16, 0)
    }
    pub const fn zeta(j: usize) -> Var {
        Var::pack(K_ZETA, j as u16, 0)
    }
    pub const fn w(j: usize) -> Var {
        Var::pack(K_W, j as u16, 0)
    }
    pub const T: Var = Var::pack(K_T, 0, 0);
    pub const TINV: Var = Var::pack(K_TINV, 0, 0);
    pub const Z: Var = Var::pack(K_Z, 0, 0);
    pub const TAU: Var = Var::pack(K_TAU, 0, 0);
    pub const MU: Var = Var::pack(K_MU, 0, 0);
    pub const fn sp(k: usize) -> Var {
        Var::pack(K_SP, k as u16, 0)
    }
    pub const fn v(j: usize) -> Var {
        Var::pack(K_V, j as u16, 0)
    }
    pub const fn slice_e(i: usize, j: usize) -> Var {
        Var::pack(K_SLICE_E, i as u16, j as u16)
    }
    pub const fn slice_v(j: usize) -> Var {
        Var::pack(K_SLICE_V, j as u16, 0)
    }

    pub fn kind(self) -> VarKind {
        let a = ((self.0 >> 12) & 0xfff) as u16;
        let b = (self.0 & 0xfff) as u16;
        match self.0 >> 24 {
            K_E => VarKind::E(a, b),
            K_X => VarKind::X(a),
            K_Y => VarKind::Y(a),
            K_LAMBDA => VarKind::Lambda(a),
            K_ZETA => VarKind::Zeta(a),
            K_W => VarKind::W(a),
            K_T => VarKind::T,
            K_TINV => VarKind::TInv,
            K_Z => VarKind::Z,
            K_TAU => VarKind::Tau,
            K_MU => VarKind::Mu,
            K_SP => VarKind::Sp(a),
            K_V => VarKind::V(a),
            K_SLICE_E => VarKind::SliceE(a, b),
            K_SLICE_V => VarKind::SliceV(a),
            _ => unreachable!("corrupt variable tag"),
        }
    }

    pub fn is_e(self) -> bool {
        self.0 >> 24 == K_E
    }

    /// Parses the names produced by `Display`.
    pub fn parse(name: &str) -> Option<Var> {
        let two = |s: &str| -> Option<(usize, usize)> {
            if let Some((a, b)) = s.split_once(',') {
                return Some((a.parse().ok()?, b.parse().ok()?));
            }
            let b = s.as_bytes();
            if b.len() == 2 && b[0].is_ascii_digit() && b[1].is_ascii_digit() {
                return Some(((b[0] - b'0') as usize, (b[1] - b'0') as usize));
            }
            None
        };
        match name {
            "t" => return Some(Var::T),
            "u" => return Some(Var::TINV),
            "z" => return Some(Var::Z),
            "tau" => return Some(Var::TAU),
            "mu" => return Some(Var::MU),
            _ => {}
        }
        let (head, tail) = name.split_once('_')?;
        let tail = tail.trim_start_matches('{').trim_end_matches('}');
        match head {
            "e" => two(tail).map(|(i, j)| Var::e(i, j)),
            "x" => tail.parse().ok().map(Var::x),
            "y" => match two(tail) {
                Some((i, j)) if tail.len() > 1 => Some(Var::slice_e(i, j)),
                _ => tail.parse().ok().map(Var::y),
            },
            "lambda" => tail.parse().ok().map(Var::lambda),
            "zeta" => tail.parse().ok().map(Var::zeta),
            "w" => tail.parse().ok().map(Var::w),
            "X" => tail.parse().ok().map(Var::sp),
            "v" => tail.parse().ok().map(Var::v),
            "s" => tail.parse().ok().map(Var::slice_v),
            _ => None,
        }
    }

    pub fn latex(self) -> String {
        let pair = |a: u16, b: u16| {
            if a < 10 && b < 10 {
                format!("{a}{b}")
            } else {
                format!("{a},{b}")
            }
        };
        match self.kind() {
            VarKind::E(i, j) => format!("e_{{{}}}", pair(i, j)),
            VarKind::X(i) => format!("x_{{{i}}}"),
            VarKind::Y(i) => format!("y_{{{i}}}"),
            VarKind::Lambda(i) => format!("\\lambda_{{{i}}}"),
            VarKind::Zeta(j) => format!("\\zeta_{{{j}}}"),
            VarKind::W(j) => format!("w_{{{j}}}"),
            VarKind::T => "t".into(),
            VarKind::TInv => "t^{-1}".into(),
            VarKind::Z => "z".into(),
            VarKind::Tau => "\\tau".into(),
            VarKind::Mu => "\\mu".into(),
            VarKind::Sp(k) => format!("X_{{{k}}}"),
            VarKind::V(j) => format!("v_{{{j}}}"),
            VarKind::SliceE(i, j) => format!("y_{{{}}}", pair(i, j)),
            VarKind::SliceV(j) => format!("y_{{{j}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = |a: u16, b: u16| {
            if a < 10 && b < 10 {
                format!("{a}{b}")
            } else {
                format!("{a},{b}")
            }
        };
        match self.kind() {
            VarKind::E(i, j) => write!(f, "e_{}", pair(i, j)),
            VarKind::X(i) => write!(f, "x_{i}"),
            VarKind::Y(i) => write!(f, "y_{i}"),
            VarKind::Lambda(i) => write!(f, "lambda_{i}"),
            VarKind::Zeta(j) => write!(f, "zeta_{j}"),
            VarKind::W(j) => write!(f, "w_{j}"),
            VarKind::T => write!(f, "t"),
            VarKind::TInv => write!(f, "u"),
            VarKind::Z => write!(f, "z"),
            VarKind::Tau => write!(f, "tau"),
            VarKind::Mu => write!(f, "mu"),
            VarKind::Sp(k) => write!(f, "X_{k}"),
            VarKind::V(j) => write!(f, "v_{j}"),
            VarKind::SliceE(i, j) => write!(f, "y_{}", pair(i, j)),
            VarKind::SliceV(j) => write!(f, "s_{j}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        let vars = [
            Var::e(1, 2),
            Var::e(12, 3),
            Var::x(3),
            Var::y(1),
            Var::lambda(2),
            Var::zeta(0),
            Var::w(4),
            Var::T,
            Var::TINV,
            Var::Z,
            Var::TAU,
            Var::MU,
            Var::sp(7),
            Var::v(4),
            Var::slice_e(3, 4),
            Var::slice_v(4),
        ];
        for v in vars {
            assert_eq!(Var::parse(&v.to_string()), Some(v), "{v}");
        }
    }

    #[test]
    fn kinds_unpack() {
        assert_eq!(Var::e(3, 1).kind(), VarKind::E(3, 1));
        assert!(Var::e(1, 1) < Var::x(1));
        assert!(Var::lambda(1) < Var::lambda(2));
    }
}
