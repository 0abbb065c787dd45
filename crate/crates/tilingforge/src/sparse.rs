//! The sparse-grid tileset `T`, its diagonal mirror `T'`, the corner-fused
//! product `tau`, the canonical tilings `alpha` and `beta`, and the
//! finite-window verification suites for their structural properties.
//!
//! `T` tiles the plane with a ground row, vertical black lines in
//! increasingly distant columns, and boxes between consecutive lines. Three
//! signal systems pin the geometry down:
//!
//! * a red counting signal, vertical inside box `j` of a column at offset
//!   `j`, shifted one cell right at every box boundary it crosses, so a
//!   width-k column closes after exactly k boxes;
//! * a measuring diagonal of slope 2 restarted at every box boundary, so a
//!   width-k box is exactly 2k-2 cells tall (box rows may only appear where
//!   the diagonal has just finished its sweep);
//! * a bottom signal that leaves the corner tile, runs along the first box
//!   boundary of each column and climbs two cells when crossing a vertical
//!   line, forcing adjacent column widths k, k+1.
//!
//! Consecutive vertical lines therefore sit at x = f(n) = (n+1)(n+2)/2 - 1
//! from the corner, and the line of column n tops out at height f(2n)+1,
//! which makes the crossings of `tau`'s two layers exactly the sparse grid
//! `{(f(n), f(m)) : m/2 <= n <= 2m}`.

use crate::solver::{enumerate, unique_extension, Extension, SolveError, SolveRequest};
use crate::tile::{Feature, FeatureSet, Patch, TileSet};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum SparseError {
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid patch: {0}")]
    InvalidPatch(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Tile ids of `T`. The numbering is arbitrary but stable; the semantic
/// grouping is what matters.
pub mod ids {
    pub const BLANK: u32 = 1;
    pub const BLANK_CAP: u32 = 2;
    pub const CORNER: u32 = 3;
    pub const G_PLAIN: u32 = 4;
    pub const G_UNDERLINE: u32 = 5;
    pub const G_REDANCHOR: u32 = 6;
    pub const CAPSIG_RAIL: u32 = 7;
    pub const LINE_FOOT: u32 = 8;
    pub const LINE_PLAIN: u32 = 9;
    pub const LINE_EXPOSED: u32 = 10;
    pub const LINE_ABSORB: u32 = 11;
    pub const CAP_SW: u32 = 12;
    pub const CAP_W: u32 = 13;
    pub const CAP_RAIL: u32 = 14;
    pub const CAP_ABSORB: u32 = 15;
    pub const CAP_E: u32 = 16;
    pub const TEE_W: u32 = 17;
    pub const TEE_W_EXPOSED: u32 = 18;
    pub const TEE_E: u32 = 19;
    pub const ROW_RESTART: u32 = 20;
    pub const ROW_RAIL_B: u32 = 21;
    pub const ROW_SHIFTOUT: u32 = 22;
    pub const ROW_SHIFTIN: u32 = 23;
    pub const ROW_RAIL_C: u32 = 24;
    pub const SIG_TEE_E0: u32 = 25;
    pub const SIG_TEE_E: u32 = 26;
    pub const SIG_CLIMB: u32 = 27;
    pub const SIG_CLIMB_EXPOSED: u32 = 28;
    pub const SIG_TEE_W: u32 = 29;
    pub const SIG_TEE_W_EXPOSED: u32 = 30;
    pub const SIG_COMBO: u32 = 31;
    pub const SIG_SHIFTIN: u32 = 32;
    pub const SIG_RAIL: u32 = 33;
    pub const I_LL: u32 = 34;
    pub const I_LR: u32 = 35;
    pub const I_RL: u32 = 36;
    pub const I_RR: u32 = 37;
    pub const RED_DE: u32 = 38;
    pub const RED_DW: u32 = 39;
    pub const D_STARTCARRY: u32 = 40;
    pub const D_CARRY_RE: u32 = 41;
    pub const D_CARRY_RW: u32 = 42;
    pub const D_TURN_RE: u32 = 43;
    pub const D_TURN_RW: u32 = 44;
    pub const D_LAND_RE: u32 = 45;
    pub const D_LAND_RW: u32 = 46;
    pub const D_LANDEXIT: u32 = 47;
    pub const RD_STARTCARRY: u32 = 48;
    pub const RD_CARRY: u32 = 49;
    pub const RD_TURN: u32 = 50;
    pub const RD_LAND: u32 = 51;
    pub const RD_LANDEXIT: u32 = 52;
    pub const ABSORB_TEE_W: u32 = 53;
    pub const ABSORB_SIG_TEE_W: u32 = 54;
}

/// Builds the sparse-grid tileset `T`.
pub fn build_t() -> TileSet {
    use Feature::*;
    let mut ts = TileSet::new("T");
    let rows: Vec<(u32, &str, &str, &str, &str, Vec<Feature>)> = vec![
        (ids::BLANK, "B", "b", "B", "b", vec![Blank]),
        (ids::BLANK_CAP, "B", "b", "Bc", "b", vec![Blank]),
        (ids::CORNER, "LA0", "gP", "B", "b", vec![Corner, Bottom, BottomSignal]),
        (ids::G_PLAIN, "IhRR", "gP", "B", "gP", vec![Bottom]),
        (ids::G_UNDERLINE, "F", "gL", "B", "gP", vec![Bottom]),
        (ids::G_REDANCHOR, "R0", "gP", "B", "gL", vec![Bottom, RedSignal]),
        (ids::CAPSIG_RAIL, "Bc", "csB", "IhRR", "csA", vec![HorizontalLine, BottomSignal]),
        (ids::LINE_FOOT, "Lv", "zLL", "F", "zRR", vec![VerticalLine]),
        (ids::LINE_PLAIN, "Lv", "zLL", "Lv", "zRR", vec![VerticalLine]),
        (ids::LINE_EXPOSED, "Lv", "zLL", "Lv", "b", vec![VerticalLine]),
        (ids::LINE_ABSORB, "Lx", "zLL", "Lv", "dt2", vec![VerticalLine]),
        (ids::CAP_SW, "Bc", "csA", "LA0", "b", vec![VerticalLine, HorizontalLine, BottomSignal]),
        (ids::CAP_W, "Bc", "cr", "Lv", "b", vec![VerticalLine, HorizontalLine]),
        (ids::CAP_RAIL, "Bc", "cr", "IhLL", "cr", vec![HorizontalLine]),
        (ids::CAP_ABSORB, "Bc", "cx", "Rv", "cr", vec![HorizontalLine, RedSignal]),
        (ids::CAP_E, "Lv", "zLL", "Lx", "cx", vec![VerticalLine, HorizontalLine]),
        (ids::TEE_W, "Lv", "lrA", "Lv", "zRR", vec![VerticalLine, HorizontalLine]),
        (ids::TEE_W_EXPOSED, "Lv", "lrA", "Lv", "b", vec![VerticalLine, HorizontalLine]),
        (ids::TEE_E, "Lv", "zLL", "Lx", "lrC", vec![VerticalLine, HorizontalLine]),
        (ids::ROW_RESTART, "Din", "lrB", "IhLL", "lrA", vec![HorizontalLine]),
        (ids::ROW_RAIL_B, "IhLR", "lrB", "IhLL", "lrB", vec![HorizontalLine]),
        (ids::ROW_SHIFTOUT, "IhLR", "rs", "Rv", "lrB", vec![HorizontalLine, RedSignal]),
        (ids::ROW_SHIFTIN, "Rv", "lrC", "IhRL", "rs", vec![HorizontalLine, RedSignal]),
        (ids::ROW_RAIL_C, "IhRR", "lrC", "IhRL", "lrC", vec![HorizontalLine]),
        (ids::SIG_TEE_E0, "Sc1", "zLL", "F", "csB", vec![VerticalLine, BottomSignal]),
        (ids::SIG_TEE_E, "Sc1", "zLL", "Lx", "sC", vec![VerticalLine, BottomSignal]),
        (ids::SIG_CLIMB, "Sc2", "zLL", "Sc1", "zRR", vec![VerticalLine, BottomSignal]),
        (ids::SIG_CLIMB_EXPOSED, "Sc2", "zLL", "Sc1", "b", vec![VerticalLine, BottomSignal]),
        (ids::SIG_TEE_W, "Lv", "sA", "Sc2", "zRR", vec![VerticalLine, BottomSignal]),
        (ids::SIG_TEE_W_EXPOSED, "Lv", "sA", "Sc2", "b", vec![VerticalLine, BottomSignal]),
        (ids::SIG_COMBO, "Din", "sB", "Rv", "sA", vec![HorizontalLine, BottomSignal, RedSignal]),
        (ids::SIG_SHIFTIN, "Rv", "sC", "IhRL", "sB", vec![HorizontalLine, BottomSignal, RedSignal]),
        (ids::SIG_RAIL, "IhRR", "sC", "IhRL", "sC", vec![HorizontalLine, BottomSignal]),
        (ids::I_LL, "IhLL", "zLL", "IhLL", "zLL", vec![]),
        (ids::I_LR, "IhLR", "zLR", "IhLR", "zLR", vec![]),
        (ids::I_RL, "IhRL", "zRL", "IhRL", "zRL", vec![]),
        (ids::I_RR, "IhRR", "zRR", "IhRR", "zRR", vec![]),
        (ids::RED_DE, "Rv", "zRL", "Rv", "zLL", vec![RedSignal]),
        (ids::RED_DW, "Rv", "zRR", "Rv", "zLR", vec![RedSignal]),
        (ids::D_STARTCARRY, "Dc2", "zLR", "Din", "zLL", vec![]),
        (ids::D_CARRY_RE, "Dc2", "zLR", "Dc1", "zLL", vec![]),
        (ids::D_CARRY_RW, "Dc2", "zRR", "Dc1", "zRL", vec![]),
        (ids::D_TURN_RE, "IhLL", "dtL", "Dc2", "zLL", vec![]),
        (ids::D_TURN_RW, "IhRL", "dtR", "Dc2", "zRL", vec![]),
        (ids::D_LAND_RE, "Dc1", "zLR", "IhLR", "dtL", vec![]),
        (ids::D_LAND_RW, "Dc1", "zRR", "IhRR", "dtR", vec![]),
        (ids::D_LANDEXIT, "IhRL", "dt2", "IhRR", "dtR", vec![]),
        (ids::RD_STARTCARRY, "RDc2", "zRR", "R0", "zLL", vec![RedSignal]),
        (ids::RD_CARRY, "RDc2", "zRR", "RDc1", "zLL", vec![RedSignal]),
        (ids::RD_TURN, "Rv", "dtR", "RDc2", "zLL", vec![RedSignal]),
        (ids::RD_LAND, "RDc1", "zRR", "Rv", "dtL", vec![RedSignal]),
        (ids::RD_LANDEXIT, "Rv", "dt2", "Rv", "dtL", vec![RedSignal]),
        (ids::ABSORB_TEE_W, "Lx", "lrA", "Lv", "dt2", vec![VerticalLine, HorizontalLine]),
        (ids::ABSORB_SIG_TEE_W, "Lx", "sA", "Sc2", "dt2", vec![VerticalLine, BottomSignal]),
    ];
    for (id, n, e, s, w, feats) in rows {
        ts.add_tile(id, n, e, s, w, FeatureSet::of(&feats)).unwrap();
    }
    ts
}

/// f(n) = (n+1)(n+2)/2 - 1, the x-offset of the n-th vertical line from the
/// corner (and, mirrored, the y-offset of the n-th horizontal line).
pub fn grid_f(n: u64) -> u64 {
    let n = n as u128;
    ((n + 1) * (n + 2) / 2 - 1) as u64
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Exact inverse of `grid_f`: the n with f(n) = x, if any.
pub fn inv_f(x: i64) -> Option<u64> {
    if x < 0 {
        return None;
    }
    // (n+1)(n+2) = 2(x+1)  <=>  n^2 + 3n - 2x = 0
    let disc = 9u128 + 8 * x as u128;
    let r = isqrt(disc);
    if r * r != disc {
        return None;
    }
    if (r - 3) % 2 != 0 {
        return None;
    }
    Some(((r - 3) / 2) as u64)
}

/// The index n of the column containing x, i.e. f(n) <= x < f(n+1).
fn column_of(x: i64) -> u64 {
    debug_assert!(x >= 0);
    let disc = 9u128 + 8 * x as u128;
    let mut n = ((isqrt(disc) - 3) / 2) as u64;
    while grid_f(n + 1) <= x as u64 {
        n += 1;
    }
    while grid_f(n) > x as u64 {
        n -= 1;
    }
    n
}

/// Whether (x, y), in corner-relative coordinates, is a grid intersection:
/// x = f(n), y = f(m) with m/2 <= n <= 2m.
pub fn is_intersection(x: i64, y: i64) -> bool {
    match (inv_f(x), inv_f(y)) {
        (Some(n), Some(m)) => m <= 2 * n && n <= 2 * m,
        _ => false,
    }
}

/// Height of the topmost box boundary of column n (the cap row); also the
/// height at which the vertical line n ends.
pub fn column_top(n: u64) -> u64 {
    if n == 0 {
        1
    } else {
        (n + 1) * (2 * n + 1)
    }
}

fn period(n: u64) -> u64 {
    if n == 0 {
        1
    } else {
        2 * n + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WestEvent {
    TeeSig,
    TeeCont,
    TeeCap,
    Absorb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EastEvent {
    Foot,
    Climb,
    TeeSigW,
    TeeW,
}

fn line_tile(n: u64, y: i64) -> u32 {
    use ids::*;
    debug_assert!(n >= 1 && y >= 1);
    let y = y as u64;
    let tn = column_top(n);
    let tw = column_top(n - 1);
    if y > tn {
        return if y == tn + 1 { BLANK_CAP } else { BLANK };
    }
    if y == tn {
        return CAP_W;
    }
    if n == 1 && y == 1 {
        return SIG_TEE_E0;
    }
    let mut west: Option<WestEvent> = None;
    if n >= 2 && y <= tw {
        let pw = period(n - 1);
        let kw = n;
        if y % pw == 0 {
            let j = y / pw;
            west = Some(if j == 1 {
                WestEvent::TeeSig
            } else if j == kw {
                WestEvent::TeeCap
            } else {
                WestEvent::TeeCont
            });
        } else if y % pw == pw - 1 {
            west = Some(WestEvent::Absorb);
        }
    }
    let p = period(n);
    let k = n + 1;
    let east: Option<EastEvent> = if y == 1 {
        Some(EastEvent::Foot)
    } else if y == 2 * n {
        Some(EastEvent::Climb)
    } else if y == p {
        Some(EastEvent::TeeSigW)
    } else if y % p == 0 && y / p < k {
        Some(EastEvent::TeeW)
    } else {
        None
    };
    match (west, east) {
        (Some(WestEvent::Absorb), Some(EastEvent::TeeW)) => ABSORB_TEE_W,
        (Some(WestEvent::Absorb), Some(EastEvent::TeeSigW)) => ABSORB_SIG_TEE_W,
        (Some(WestEvent::Absorb), None) => LINE_ABSORB,
        (Some(WestEvent::TeeSig), None) => SIG_TEE_E,
        (Some(WestEvent::TeeCont), None) => TEE_E,
        (Some(WestEvent::TeeCap), None) => CAP_E,
        (None, Some(EastEvent::Foot)) => LINE_FOOT,
        (None, Some(EastEvent::Climb)) => {
            if n == 1 {
                SIG_CLIMB_EXPOSED
            } else {
                SIG_CLIMB
            }
        }
        (None, Some(EastEvent::TeeSigW)) => {
            if n == 1 {
                SIG_TEE_W_EXPOSED
            } else {
                SIG_TEE_W
            }
        }
        (None, Some(EastEvent::TeeW)) => {
            if y > tw {
                TEE_W_EXPOSED
            } else {
                TEE_W
            }
        }
        (None, None) => {
            if y > tw {
                LINE_EXPOSED
            } else {
                LINE_PLAIN
            }
        }
        (Some(w), Some(e)) => unreachable!("coinciding line events {w:?}/{e:?} at n={n} y={y}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiagRole {
    None,
    StartCarry,
    Carry,
    Turn,
    Land,
    LandExit,
}

fn column_tile(n: u64, ox: u64, y: i64) -> u32 {
    use ids::*;
    debug_assert!(n >= 1 && y >= 1);
    let y = y as u64;
    let k = n + 1;
    let p = period(n);
    let tn = column_top(n);
    if y > tn {
        return if y == tn + 1 { BLANK_CAP } else { BLANK };
    }
    if y % p == 0 {
        let j = y / p;
        if j == 1 {
            return match ox {
                1 => SIG_COMBO,
                2 => SIG_SHIFTIN,
                _ => SIG_RAIL,
            };
        }
        if j == k {
            return if ox == k { CAP_ABSORB } else { CAP_RAIL };
        }
        return if ox == 1 {
            ROW_RESTART
        } else if ox == j {
            ROW_SHIFTOUT
        } else if ox == j + 1 {
            ROW_SHIFTIN
        } else if ox < j {
            ROW_RAIL_B
        } else {
            ROW_RAIL_C
        };
    }
    let j = y / p + 1; // box index within the column
    let ly = y - (j - 1) * p; // 1 ..= 2k-2
    let red = ox == j;
    let role = if ly == 1 {
        if ox == 1 {
            DiagRole::StartCarry
        } else {
            DiagRole::None
        }
    } else if ly % 2 == 1 {
        if ox == (ly + 1) / 2 {
            DiagRole::Carry
        } else {
            DiagRole::None
        }
    } else if ox == ly / 2 {
        DiagRole::Turn
    } else if ox == ly / 2 + 1 {
        if ly == 2 * k - 2 {
            DiagRole::LandExit
        } else {
            DiagRole::Land
        }
    } else {
        DiagRole::None
    };
    let (dmin, _dmax) = if ly % 2 == 1 {
        ((ly + 1) / 2, (ly + 1) / 2)
    } else {
        (ly / 2, ly / 2 + 1)
    };
    match (red, role) {
        (true, DiagRole::StartCarry) => RD_STARTCARRY,
        (true, DiagRole::Carry) => RD_CARRY,
        (true, DiagRole::Turn) => RD_TURN,
        (true, DiagRole::Land) => RD_LAND,
        (true, DiagRole::LandExit) => RD_LANDEXIT,
        (false, DiagRole::StartCarry) => D_STARTCARRY,
        (false, DiagRole::Carry) => {
            if ox < j {
                D_CARRY_RE
            } else {
                D_CARRY_RW
            }
        }
        (false, DiagRole::Turn) => {
            if ox < j {
                D_TURN_RE
            } else {
                D_TURN_RW
            }
        }
        (false, DiagRole::Land) => {
            if ox < j {
                D_LAND_RE
            } else {
                D_LAND_RW
            }
        }
        (false, DiagRole::LandExit) => D_LANDEXIT,
        (true, DiagRole::None) => {
            if dmin > j {
                RED_DE
            } else {
                RED_DW
            }
        }
        (false, DiagRole::None) => {
            let r_east = ox < j;
            let d_east = ox < dmin;
            match (r_east, d_east) {
                (true, true) => I_LL,
                (true, false) => I_LR,
                (false, true) => I_RL,
                (false, false) => I_RR,
            }
        }
    }
}

/// The tile of the canonical tiling `alpha` at corner-relative (x, y).
/// Total on all of Z^2.
pub fn alpha_tile(x: i64, y: i64) -> u32 {
    use ids::*;
    if y < 0 {
        return BLANK;
    }
    if y == 0 {
        if x < 0 {
            return BLANK;
        }
        if x == 0 {
            return CORNER;
        }
        if let Some(n) = inv_f(x) {
            if n >= 1 {
                return G_UNDERLINE;
            }
        }
        if x >= 2 {
            if let Some(n) = inv_f(x - 1) {
                if n >= 1 {
                    return G_REDANCHOR;
                }
            }
        }
        return G_PLAIN;
    }
    if x < 0 {
        return BLANK;
    }
    if x == 0 {
        return match y {
            1 => CAP_SW,
            2 => BLANK_CAP,
            _ => BLANK,
        };
    }
    if x == 1 {
        return match y {
            1 => CAPSIG_RAIL,
            2 => BLANK_CAP,
            _ => BLANK,
        };
    }
    if let Some(n) = inv_f(x) {
        return line_tile(n, y);
    }
    let n = column_of(x);
    let ox = x as u64 - grid_f(n);
    column_tile(n, ox, y)
}

/// Mirrors a tileset along the southwest-northeast diagonal: north and east
/// edges swap, south and west edges swap, and vertical/horizontal line
/// features transpose. An involution.
pub fn mirror(ts: &TileSet) -> TileSet {
    let name = if let Some(base) = ts.name.strip_suffix("_mirror") {
        base.to_string()
    } else {
        format!("{}_mirror", ts.name)
    };
    let mut out = TileSet::new(&name);
    for t in ts.tiles() {
        let mut feats = FeatureSet::empty();
        for f in t.features.iter() {
            feats.insert(match f {
                Feature::VerticalLine => Feature::HorizontalLine,
                Feature::HorizontalLine => Feature::VerticalLine,
                other => other,
            });
        }
        out.add_tile(
            t.id,
            ts.color_name(t.east),
            ts.color_name(t.north),
            ts.color_name(t.west),
            ts.color_name(t.south),
            feats,
        )
        .unwrap();
    }
    out
}

/// Id of the product tile pairing `a` from `T` with `b` from `T'`.
pub fn tau_id(a: u32, b: u32) -> u32 {
    a * 100 + b
}

pub fn tau_components(id: u32) -> (u32, u32) {
    (id / 100, id % 100)
}

/// The sparse-grid tileset family: `T`, its mirror, and the corner-fused
/// product `tau`, with feature indexes for the verification suites.
pub struct SparseGridTileset {
    pub t: TileSet,
    pub t_mirror: TileSet,
    pub tau: TileSet,
    /// Corner tile id within `tau`.
    pub corner_id: u32,
    /// Corner tile id within `T` (and `T'`).
    pub t_corner_id: u32,
}

/// Builds `tau = (T \ corner) x (T' \ corner') + fused corner`, pairing edge
/// colors componentwise.
pub fn build_tau() -> SparseGridTileset {
    let t = build_t();
    let t_mirror = mirror(&t);
    let mut tau = TileSet::new("tau");
    let corner = ids::CORNER;
    for a in t.tiles() {
        for b in t_mirror.tiles() {
            if (a.id == corner) != (b.id == corner) {
                continue;
            }
            if a.id == corner && b.id != corner {
                continue;
            }
            let mut feats = FeatureSet::empty();
            for f in a.features.iter() {
                feats.insert(f);
            }
            for f in b.features.iter() {
                feats.insert(f);
            }
            let n = format!("{}*{}", t.color_name(a.north), t_mirror.color_name(b.north));
            let e = format!("{}*{}", t.color_name(a.east), t_mirror.color_name(b.east));
            let s = format!("{}*{}", t.color_name(a.south), t_mirror.color_name(b.south));
            let w = format!("{}*{}", t.color_name(a.west), t_mirror.color_name(b.west));
            tau.add_tile(tau_id(a.id, b.id), &n, &e, &s, &w, feats).unwrap();
        }
    }
    SparseGridTileset {
        t,
        t_mirror,
        tau,
        corner_id: tau_id(corner, corner),
        t_corner_id: corner,
    }
}

impl SparseGridTileset {
    /// The tile of `beta` (the unique corner tiling of `tau`) at
    /// corner-relative (x, y).
    pub fn beta_tile(&self, x: i64, y: i64) -> u32 {
        let a = alpha_tile(x, y);
        let b = alpha_tile(y, x);
        tau_id(a, b)
    }

    /// True when the tile's layers cross: one carries a vertical line of
    /// `T`, the other a horizontal line of `T'`. The corner counts as the
    /// (0,0) grid point.
    pub fn is_crossing_tile(&self, id: u32) -> bool {
        if id == self.corner_id {
            return true;
        }
        let (a, b) = tau_components(id);
        let (Some(ta), Some(tb)) = (self.t.get(a), self.t_mirror.get(b)) else {
            return false;
        };
        ta.features.contains(Feature::VerticalLine) && tb.features.contains(Feature::HorizontalLine)
    }

    /// Ids of `T` tiles carrying a vertical line.
    pub fn vline_ids(&self) -> Vec<u32> {
        self.t.with_feature(Feature::VerticalLine)
    }

    /// Ids of `T` ground tiles (excluding the corner).
    pub fn ground_ids(&self) -> Vec<u32> {
        vec![ids::G_PLAIN, ids::G_UNDERLINE, ids::G_REDANCHOR]
    }
}

/// The canonical `alpha` window: `width x height` cells whose bottom-left
/// is at `origin` in corner-relative coordinates (`anchor` names the window
/// cell holding the corner; it must lie inside the window).
pub fn alpha_patch(width: u32, height: u32, anchor: (u32, u32)) -> Result<Patch, SparseError> {
    if anchor.0 >= width || anchor.1 >= height {
        return Err(SparseError::WindowTooSmall(format!(
            "anchor ({}, {}) outside {width}x{height} window",
            anchor.0, anchor.1
        )));
    }
    Ok(alpha_window(
        (-(anchor.0 as i64), -(anchor.1 as i64)),
        width,
        height,
    ))
}

/// The `alpha` window with bottom-left at `origin` (corner-relative), no
/// containment requirement.
pub fn alpha_window(origin: (i64, i64), width: u32, height: u32) -> Patch {
    let mut p = Patch::new(origin, width, height);
    for dy in 0..height {
        for dx in 0..width {
            p.set(dx, dy, alpha_tile(origin.0 + dx as i64, origin.1 + dy as i64))
                .unwrap();
        }
    }
    p
}

/// The canonical `beta` window with the corner at the given window cell.
pub fn beta_patch(
    sg: &SparseGridTileset,
    width: u32,
    height: u32,
    corner_at: (u32, u32),
) -> Result<Patch, SparseError> {
    if corner_at.0 >= width || corner_at.1 >= height {
        return Err(SparseError::WindowTooSmall(format!(
            "corner ({}, {}) outside {width}x{height} window",
            corner_at.0, corner_at.1
        )));
    }
    Ok(beta_window(
        sg,
        (-(corner_at.0 as i64), -(corner_at.1 as i64)),
        width,
        height,
    ))
}

pub fn beta_window(sg: &SparseGridTileset, origin: (i64, i64), width: u32, height: u32) -> Patch {
    let mut p = Patch::new(origin, width, height);
    for dy in 0..height {
        for dx in 0..width {
            p.set(
                dx,
                dy,
                sg.beta_tile(origin.0 + dx as i64, origin.1 + dy as i64),
            )
            .unwrap();
        }
    }
    p
}

/// Searches for a corner-relative anchor under which the complete window
/// `patch` coincides with `alpha`. Returns the window coordinates of the
/// corner cell (possibly outside the window).
pub fn find_alpha_anchor(patch: &Patch, max_n: u64) -> Option<(i64, i64)> {
    let w = patch.width as i64;
    let h = patch.height as i64;
    let t_max = column_top(max_n) as i64;
    for n in 0..=max_n {
        let fx = grid_f(n) as i64;
        for cx in -fx - w..=w {
            for cy in -t_max..=h {
                if alpha_matches(patch, (cx, cy)) {
                    return Some((cx, cy));
                }
            }
        }
    }
    None
}

fn alpha_matches(patch: &Patch, corner: (i64, i64)) -> bool {
    for (&(x, y), &id) in &patch.cells {
        if alpha_tile(x as i64 - corner.0, y as i64 - corner.1) != id {
            return false;
        }
    }
    true
}

fn beta_matches(sg: &SparseGridTileset, patch: &Patch, corner: (i64, i64)) -> bool {
    for (&(x, y), &id) in &patch.cells {
        if sg.beta_tile(x as i64 - corner.0, y as i64 - corner.1) != id {
            return false;
        }
    }
    true
}

/// Searches a bounded range of anchors for a `beta` match.
pub fn find_beta_anchor(sg: &SparseGridTileset, patch: &Patch, reach: i64) -> Option<(i64, i64)> {
    let w = patch.width as i64;
    let h = patch.height as i64;
    for cx in -reach..=w {
        for cy in -reach..=h {
            if beta_matches(sg, patch, (cx, cy)) {
                return Some((cx, cy));
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub description: String,
    pub cases_checked: usize,
    pub completions_checked: usize,
    pub counterexamples: Vec<Patch>,
    pub passed: bool,
}

/// For every placement of two full-height vertical-line columns at each
/// distance in a k x k window, enumerates all completions and checks that
/// each one is a window of `alpha` (up to shift). Also exercises the
/// bottom-anchored width forcing: with a ground row pinned, three lines at
/// widths (w, w+1) admit completions while equal widths (w, w) admit none.
pub fn verify_two_lines(sg: &SparseGridTileset, k: u32) -> Result<VerificationReport, SparseError> {
    let vline = sg.vline_ids();
    let mut cases = 0usize;
    let mut completions = 0usize;
    let mut counterexamples = Vec::new();

    for d in 2..=k.saturating_sub(2) {
        for x1 in 0..(k - d) {
            let x2 = x1 + d;
            let mut req = SolveRequest::new(&sg.t, k, k);
            let mut domains = HashMap::new();
            for y in 0..k {
                domains.insert((x1, y), vline.clone());
                domains.insert((x2, y), vline.clone());
            }
            req.domains = Some(domains);
            req.limit = Some(2_000_000);
            let out = enumerate(&req)?;
            if matches!(out.status, crate::solver::SolveStatus::LimitReached) {
                return Err(SparseError::BudgetExceeded(format!(
                    "two-lines enumeration at d={d}, x1={x1}"
                )));
            }
            cases += 1;
            for sol in &out.solutions {
                completions += 1;
                if find_alpha_anchor(sol, (k + 2) as u64).is_none() {
                    counterexamples.push(sol.clone());
                    if counterexamples.len() > 4 {
                        let passed = false;
                        return Ok(VerificationReport {
                            description: format!("two-lines uniqueness, k={k}"),
                            cases_checked: cases,
                            completions_checked: completions,
                            counterexamples,
                            passed,
                        });
                    }
                }
            }
        }
    }

    // Bottom-anchored adjacent width forcing: ground row pinned, three
    // full lines above it. Consecutive widths (w, w+1) must be satisfiable,
    // equal widths must not.
    if k >= 9 {
        let ground = sg.ground_ids();
        let run = |gaps: (u32, u32)| -> Result<usize, SparseError> {
            let x1 = 0u32;
            let x2 = x1 + gaps.0;
            let x3 = x2 + gaps.1;
            if x3 >= k {
                return Ok(usize::MAX);
            }
            let mut req = SolveRequest::new(&sg.t, k, k);
            let mut domains = HashMap::new();
            for x in 0..k {
                if x != x1 && x != x2 && x != x3 {
                    domains.insert((x, 0), ground.clone());
                }
            }
            for y in 1..k {
                domains.insert((x1, y), vline.clone());
                domains.insert((x2, y), vline.clone());
                domains.insert((x3, y), vline.clone());
            }
            for x in [x1, x2, x3] {
                domains.insert((x, 0), vec![ids::G_UNDERLINE]);
            }
            req.domains = Some(domains);
            req.limit = Some(1);
            Ok(enumerate(&req)?.solutions.len())
        };
        cases += 2;
        if run((3, 4))? == 0 {
            counterexamples.push(Patch::new((0, 0), 0, 0));
        }
        if run((3, 3))? != 0 {
            counterexamples.push(Patch::new((0, 1), 0, 0));
        }
    }

    let passed = counterexamples.is_empty();
    Ok(VerificationReport {
        description: format!("two-lines uniqueness, k={k}"),
        cases_checked: cases,
        completions_checked: completions,
        counterexamples,
        passed,
    })
}

/// Pins the corner tile of `tau` at every position of a k x k window and
/// checks that the completion is unique and equal to the `beta` window.
pub fn verify_corner_forcing(
    sg: &SparseGridTileset,
    k: u32,
) -> Result<VerificationReport, SparseError> {
    let mut cases = 0usize;
    let mut counterexamples = Vec::new();
    for cy in 0..k {
        for cx in 0..k {
            cases += 1;
            let mut pins = Patch::new((-(cx as i64), -(cy as i64)), k, k);
            pins.set(cx, cy, sg.corner_id).unwrap();
            match unique_extension(&sg.tau, &pins, k, k)? {
                Extension::Unique(sol) => {
                    let expect = beta_patch(sg, k, k, (cx, cy))?;
                    if sol.cells != expect.cells {
                        counterexamples.push(sol);
                    }
                }
                Extension::None | Extension::Multiple => {
                    counterexamples.push(pins.clone());
                }
            }
            if counterexamples.len() > 4 {
                return Ok(VerificationReport {
                    description: format!("corner forcing, k={k}"),
                    cases_checked: cases,
                    completions_checked: cases,
                    counterexamples,
                    passed: false,
                });
            }
        }
    }
    let passed = counterexamples.is_empty();
    Ok(VerificationReport {
        description: format!("corner forcing, k={k}"),
        cases_checked: cases,
        completions_checked: cases,
        counterexamples,
        passed,
    })
}

/// Looks for valid k x k windows of `tau`, free of the corner tile, in
/// which two distinct cells are layer crossings. The whole-plane statement
/// is that a tiling without the corner has at most one crossing; windows
/// cut from `beta` far from its corner do contain several, so the finite
/// check asserts that every such window is a window of `beta`.
pub fn verify_one_intersection(
    sg: &SparseGridTileset,
    k: u32,
) -> Result<VerificationReport, SparseError> {
    let crossing: Vec<u32> = sg
        .tau
        .tiles()
        .iter()
        .map(|t| t.id)
        .filter(|&id| id != sg.corner_id && sg.is_crossing_tile(id))
        .collect();
    let no_corner: Vec<u32> = sg
        .tau
        .tiles()
        .iter()
        .map(|t| t.id)
        .filter(|&id| id != sg.corner_id)
        .collect();
    let mut cases = 0usize;
    let mut completions = 0usize;
    let mut counterexamples = Vec::new();

    // Two pinned crossing cells; every other cell corner-free.
    let positions: Vec<(u32, u32)> = (0..k).flat_map(|y| (0..k).map(move |x| (x, y))).collect();
    for (i, &p1) in positions.iter().enumerate() {
        for &p2 in positions.iter().skip(i + 1) {
            cases += 1;
            let mut req = SolveRequest::new(&sg.tau, k, k);
            let mut domains = HashMap::new();
            for &pos in &positions {
                domains.insert(pos, no_corner.clone());
            }
            domains.insert(p1, crossing.clone());
            domains.insert(p2, crossing.clone());
            req.domains = Some(domains);
            req.limit = Some(5000);
            let out = enumerate(&req)?;
            completions += out.solutions.len();
            for sol in &out.solutions {
                if find_beta_anchor(sg, sol, (column_top((k + 2) as u64) + k as u64) as i64)
                    .is_none()
                {
                    counterexamples.push(sol.clone());
                    if counterexamples.len() > 4 {
                        return Ok(VerificationReport {
                            description: format!("one-intersection bound, k={k}"),
                            cases_checked: cases,
                            completions_checked: completions,
                            counterexamples,
                            passed: false,
                        });
                    }
                }
            }
        }
    }
    let passed = counterexamples.is_empty();
    Ok(VerificationReport {
        description: format!("one-intersection bound, k={k}"),
        cases_checked: cases,
        completions_checked: completions,
        counterexamples,
        passed,
    })
}

/// Family labels for windows of `T`, assigned from feature statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyLabel {
    Alpha,
    Blank,
    Field,
    Red,
    Diag,
    Row,
    RedRow,
    Line,
    LineRedEast,
    LineRedWest,
    LineRowEast,
    LineRowWest,
    LineRowsBoth,
    Unknown,
}

/// Classifies a complete valid window of `T` by counting vertical lines,
/// horizontal rows and red signal columns. `Unknown` only for windows too
/// small to discriminate.
pub fn classify_family(ts: &TileSet, patch: &Patch) -> Result<FamilyLabel, SparseError> {
    let report = crate::tile::validate_patch(patch, ts)
        .map_err(|e| SparseError::InvalidPatch(e.to_string()))?;
    if !report.valid {
        return Err(SparseError::InvalidPatch(format!(
            "{} adjacency violations",
            report.violations.len()
        )));
    }
    if patch.width < 2 || patch.height < 2 || !patch.is_complete() {
        return Ok(FamilyLabel::Unknown);
    }
    let has = |id: u32, f: Feature| ts.get(id).map(|t| t.features.contains(f)).unwrap_or(false);

    let mut vcols = Vec::new();
    for x in 0..patch.width {
        if (0..patch.height).all(|y| has(patch.get(x, y).unwrap(), Feature::VerticalLine)) {
            vcols.push(x);
        }
    }
    let mut hrows = 0;
    for y in 0..patch.height {
        if (0..patch.width).all(|x| has(patch.get(x, y).unwrap(), Feature::HorizontalLine)) {
            hrows += 1;
        }
    }
    let mut red_cols = Vec::new();
    for x in 0..patch.width {
        if (0..patch.height).any(|y| {
            let id = patch.get(x, y).unwrap();
            has(id, Feature::RedSignal) && !has(id, Feature::HorizontalLine)
        }) {
            red_cols.push(x);
        }
    }
    let corner = (0..patch.width)
        .any(|x| (0..patch.height).any(|y| has(patch.get(x, y).unwrap(), Feature::Corner)));
    let bottom = (0..patch.width)
        .any(|x| (0..patch.height).any(|y| has(patch.get(x, y).unwrap(), Feature::Bottom)));
    let diag_ids = [
        ids::D_STARTCARRY,
        ids::D_CARRY_RE,
        ids::D_CARRY_RW,
        ids::D_TURN_RE,
        ids::D_TURN_RW,
        ids::D_LAND_RE,
        ids::D_LAND_RW,
        ids::D_LANDEXIT,
    ];
    let diag = (0..patch.width).any(|x| {
        (0..patch.height).any(|y| diag_ids.contains(&patch.get(x, y).unwrap()))
    });

    if corner || bottom || vcols.len() >= 2 {
        return Ok(FamilyLabel::Alpha);
    }
    if vcols.len() == 1 {
        let line_x = vcols[0];
        let red_east = red_cols.iter().any(|&x| x > line_x);
        let red_west = red_cols.iter().any(|&x| x < line_x);
        // A row through the line shows as horizontal-line tiles beside it.
        let row_east = (0..patch.height).any(|y| {
            (line_x + 1..patch.width)
                .all(|x| has(patch.get(x, y).unwrap(), Feature::HorizontalLine))
        }) && line_x + 1 < patch.width;
        let row_west = (0..patch.height).any(|y| {
            (0..line_x).all(|x| has(patch.get(x, y).unwrap(), Feature::HorizontalLine))
        }) && line_x > 0;
        return Ok(match (row_east, row_west) {
            (true, true) => FamilyLabel::LineRowsBoth,
            (true, false) => FamilyLabel::LineRowEast,
            (false, true) => FamilyLabel::LineRowWest,
            (false, false) => {
                if red_east {
                    FamilyLabel::LineRedEast
                } else if red_west {
                    FamilyLabel::LineRedWest
                } else {
                    FamilyLabel::Line
                }
            }
        });
    }
    if hrows >= 1 {
        return Ok(if red_cols.is_empty() {
            FamilyLabel::Row
        } else {
            FamilyLabel::RedRow
        });
    }
    if !red_cols.is_empty() {
        return Ok(FamilyLabel::Red);
    }
    if diag {
        return Ok(FamilyLabel::Diag);
    }
    let all_blank = (0..patch.width)
        .all(|x| (0..patch.height).all(|y| has(patch.get(x, y).unwrap(), Feature::Blank)));
    Ok(if all_blank {
        FamilyLabel::Blank
    } else {
        FamilyLabel::Field
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::validate_patch;

    #[test]
    fn f_values() {
        assert_eq!(grid_f(0), 0);
        assert_eq!(grid_f(1), 2);
        assert_eq!(grid_f(2), 5);
        assert_eq!(grid_f(3), 9);
        assert_eq!(inv_f(0), Some(0));
        assert_eq!(inv_f(2), Some(1));
        assert_eq!(inv_f(5), Some(2));
        assert_eq!(inv_f(9), Some(3));
        assert_eq!(inv_f(1), None);
        assert_eq!(inv_f(3), None);
    }

    #[test]
    fn intersection_examples() {
        assert!(is_intersection(0, 0));
        assert!(is_intersection(2, 2));
        assert!(is_intersection(5, 2)); // n=2, m=1: 1/2 <= 2 <= 2
        assert!(!is_intersection(grid_f(5) as i64, grid_f(1) as i64)); // 5 > 2*1
        assert!(!is_intersection(1, 0));
        assert!(!is_intersection(0, 2)); // n=0, m=1: m/2 > n
    }

    #[test]
    fn alpha_windows_validate() {
        let t = build_t();
        // A large swath around the corner, including all boundary zones.
        let p = alpha_window((-3, -3), 40, 40);
        let report = validate_patch(&p, &t).unwrap();
        assert!(
            report.valid,
            "alpha invalid at {:?}",
            &report.violations[..report.violations.len().min(8)]
        );
        // Deep interior, away from the corner.
        let q = alpha_window((30, 1), 30, 60);
        assert!(validate_patch(&q, &t).unwrap().valid);
        let r = alpha_window((5, 90), 60, 30);
        assert!(validate_patch(&r, &t).unwrap().valid);
    }

    #[test]
    fn alpha_line_positions() {
        // Columns of vertical-line tiles appear exactly at x = f(n) within
        // their height range.
        let t = build_t();
        for n in 1..6u64 {
            let x = grid_f(n) as i64;
            for y in 1..=column_top(n) as i64 {
                let id = alpha_tile(x, y);
                let tile = t.get(id).unwrap();
                assert!(
                    tile.features.contains(Feature::VerticalLine),
                    "({x},{y}) = {id} not a line tile"
                );
            }
            assert_eq!(alpha_tile(x, column_top(n) as i64 + 1), ids::BLANK_CAP);
        }
    }

    #[test]
    fn line_top_matches_cone() {
        // Line n must reach exactly up to f(2n), and stop before f(2n+1).
        for n in 1..8u64 {
            let top = column_top(n);
            assert!(top > grid_f(2 * n), "line {n} too short");
            assert!(top < grid_f(2 * n + 1), "line {n} too tall");
        }
    }

    #[test]
    fn mirror_is_involution() {
        let t = build_t();
        let m = mirror(&mirror(&t));
        for tile in t.tiles() {
            let back = m.get(tile.id).unwrap();
            assert_eq!(t.color_name(tile.north), m.color_name(back.north));
            assert_eq!(t.color_name(tile.east), m.color_name(back.east));
            assert_eq!(t.color_name(tile.south), m.color_name(back.south));
            assert_eq!(t.color_name(tile.west), m.color_name(back.west));
            assert_eq!(tile.features, back.features);
        }
    }

    #[test]
    fn mirror_of_symmetric_tile_is_identity() {
        let mut ts = TileSet::new("one");
        ts.add_tile(1, "a", "a", "a", "a", FeatureSet::empty()).unwrap();
        let m = mirror(&ts);
        let t = m.get(1).unwrap();
        assert_eq!(m.color_name(t.north), "a");
        assert_eq!(m.color_name(t.south), "a");
    }

    #[test]
    fn tau_size_and_corner() {
        let sg = build_tau();
        let n = sg.t.len() as usize;
        assert_eq!(sg.tau.len(), (n - 1) * (n - 1) + 1);
        let corner = sg.tau.get(sg.corner_id).unwrap();
        assert!(corner.features.contains(Feature::Corner));
        assert!(corner.features.contains(Feature::Bottom));
        assert!(corner.features.contains(Feature::BottomSignal));
    }

    #[test]
    fn corner_tile_features() {
        let t = build_t();
        let c = t.get(ids::CORNER).unwrap();
        assert!(c.features.contains(Feature::Corner));
        assert!(c.features.contains(Feature::Bottom));
        assert!(c.features.contains(Feature::BottomSignal));
    }

    #[test]
    fn feature_vocabulary_counts() {
        let t = build_t();
        assert!(t.with_feature(Feature::VerticalLine).len() >= 12);
        assert!(t.with_feature(Feature::HorizontalLine).len() >= 7);
        assert!(t.with_feature(Feature::BottomSignal).len() >= 7);
        assert!(t.with_feature(Feature::RedSignal).len() >= 10);
        assert_eq!(t.with_feature(Feature::Corner), vec![ids::CORNER]);
        assert_eq!(t.with_feature(Feature::Bottom).len(), 4);
    }

    #[test]
    fn vertical_line_continuity() {
        // A vertical line never continues into a non-line tile except by
        // capping out.
        let t = build_t();
        let caps = [ids::CAP_SW, ids::CAP_W];
        for tile in t.tiles() {
            if !tile.features.contains(Feature::VerticalLine) || caps.contains(&tile.id) {
                continue;
            }
            for above in t.tiles() {
                if above.south == tile.north {
                    assert!(
                        above.features.contains(Feature::VerticalLine),
                        "line tile {} continues into non-line {}",
                        tile.id,
                        above.id
                    );
                }
            }
        }
    }

    #[test]
    fn beta_windows_validate() {
        let sg = build_tau();
        let p = beta_window(&sg, (-3, -3), 30, 30);
        let report = validate_patch(&p, &sg.tau).unwrap();
        assert!(
            report.valid,
            "beta invalid at {:?}",
            &report.violations[..report.violations.len().min(8)]
        );
    }

    #[test]
    fn beta_crossings_match_intersections() {
        let sg = build_tau();
        for y in -2..50i64 {
            for x in -2..50i64 {
                let id = sg.beta_tile(x, y);
                let crossing = sg.is_crossing_tile(id);
                assert_eq!(
                    crossing,
                    is_intersection(x, y),
                    "crossing mismatch at ({x},{y}): tile {id}"
                );
            }
        }
    }

    #[test]
    fn beta_contains_corner_once() {
        let sg = build_tau();
        let p = beta_patch(&sg, 12, 12, (2, 2)).unwrap();
        let count = p
            .cells
            .values()
            .filter(|&&id| id == sg.corner_id)
            .count();
        assert_eq!(count, 1);
    }

    #[test]
    fn beta_line_offsets() {
        // Vertical lines of the T layer at x in {0,2,5,9,14,20,27} in a
        // 30-wide window anchored at the corner.
        let sg = build_tau();
        let p = beta_patch(&sg, 30, 8, (0, 0)).unwrap();
        let mut offsets = Vec::new();
        for x in 0..30u32 {
            let id = p.get(x, 2).unwrap();
            let (a, _) = tau_components(id);
            if sg
                .t
                .get(a)
                .map(|t| t.features.contains(Feature::VerticalLine))
                .unwrap_or(false)
            {
                offsets.push(x);
            }
        }
        let expected: Vec<u32> = (0..7).map(|n| grid_f(n) as u32).filter(|&x| x < 30).collect();
        let visible: Vec<u32> = expected
            .iter()
            .copied()
            .filter(|&x| column_top(inv_f(x as i64).unwrap()) >= 2)
            .collect();
        assert_eq!(offsets, visible);
    }

    #[test]
    fn classify_blank_and_alpha() {
        let t = build_t();
        let mut blank = Patch::new((0, 0), 3, 3);
        for x in 0..3 {
            for y in 0..3 {
                blank.set(x, y, ids::BLANK).unwrap();
            }
        }
        assert_eq!(classify_family(&t, &blank).unwrap(), FamilyLabel::Blank);
        let a = alpha_patch(8, 8, (1, 1)).unwrap();
        assert_eq!(classify_family(&t, &a).unwrap(), FamilyLabel::Alpha);
    }

    #[test]
    fn alpha_anchor_found_for_alpha_windows() {
        let p = alpha_window((3, 1), 7, 7);
        let anchor = find_alpha_anchor(&p, 10);
        assert_eq!(anchor, Some((-3, -1)));
    }
}
