//! Wang tiles, tilesets, finite patches and local validity.
//!
//! Tiles are unit squares with a color on each of the four edges; they may
//! not be rotated or flipped. A patch is a partial assignment of tiles to a
//! finite rectangle; it is valid when every pair of adjacent assigned cells
//! agrees on the shared edge color. Coordinates grow x-right, y-up.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

/// Interned edge color. Only meaningful together with the owning tileset's
/// color table; equality is the only supported operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColor(pub u32);

/// Semantic tags carried by tiles. Features are metadata for analysis and
/// rendering; they never participate in adjacency checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    VerticalLine,
    HorizontalLine,
    RedSignal,
    BottomSignal,
    Corner,
    Bottom,
    Blank,
    TmCell,
}

impl Feature {
    pub const ALL: [Feature; 8] = [
        Feature::VerticalLine,
        Feature::HorizontalLine,
        Feature::RedSignal,
        Feature::BottomSignal,
        Feature::Corner,
        Feature::Bottom,
        Feature::Blank,
        Feature::TmCell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::VerticalLine => "vline",
            Feature::HorizontalLine => "hline",
            Feature::RedSignal => "red",
            Feature::BottomSignal => "bsignal",
            Feature::Corner => "corner",
            Feature::Bottom => "bottom",
            Feature::Blank => "blank",
            Feature::TmCell => "tmcell",
        }
    }

    pub fn parse(s: &str) -> Option<Feature> {
        Feature::ALL.iter().copied().find(|f| f.name() == s)
    }

    fn bit(self) -> u8 {
        Feature::ALL.iter().position(|&f| f == self).unwrap() as u8
    }
}

/// Small set of features, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FeatureSet(u8);

impl FeatureSet {
    pub fn empty() -> Self {
        FeatureSet(0)
    }

    pub fn of(features: &[Feature]) -> Self {
        let mut s = FeatureSet(0);
        for &f in features {
            s.insert(f);
        }
        s
    }

    pub fn insert(&mut self, f: Feature) {
        self.0 |= 1 << f.bit();
    }

    pub fn contains(self, f: Feature) -> bool {
        self.0 & (1 << f.bit()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Feature> {
        Feature::ALL.iter().copied().filter(move |f| self.contains(*f))
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(|x| x.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

/// A Wang tile: four edge colors plus feature tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangTile {
    pub id: u32,
    pub north: EdgeColor,
    pub east: EdgeColor,
    pub south: EdgeColor,
    pub west: EdgeColor,
    pub features: FeatureSet,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum TileError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate tile id {0}")]
    DuplicateId(u32),
    #[error("unknown tile id {0}")]
    UnknownTileId(u32),
    #[error("empty tileset")]
    Empty,
    #[error("cell ({0},{1}) outside the declared {2}x{3} window")]
    CellOutsideWindow(u32, u32, u32, u32),
    #[error("boundary length {got} does not match window dimension {want}")]
    BoundaryLength { got: usize, want: usize },
}

/// A finite, named set of Wang tiles with an interned color table.
#[derive(Debug, Clone)]
pub struct TileSet {
    pub name: String,
    tiles: Vec<WangTile>,
    by_id: HashMap<u32, usize>,
    color_names: Vec<String>,
    color_index: HashMap<String, u32>,
}

impl TileSet {
    pub fn new(name: &str) -> Self {
        TileSet {
            name: name.to_string(),
            tiles: Vec::new(),
            by_id: HashMap::new(),
            color_names: Vec::new(),
            color_index: HashMap::new(),
        }
    }

    pub fn color(&mut self, name: &str) -> EdgeColor {
        if let Some(&i) = self.color_index.get(name) {
            return EdgeColor(i);
        }
        let i = self.color_names.len() as u32;
        self.color_names.push(name.to_string());
        self.color_index.insert(name.to_string(), i);
        EdgeColor(i)
    }

    pub fn color_name(&self, c: EdgeColor) -> &str {
        &self.color_names[c.0 as usize]
    }

    pub fn lookup_color(&self, name: &str) -> Option<EdgeColor> {
        self.color_index.get(name).map(|&i| EdgeColor(i))
    }

    pub fn color_count(&self) -> usize {
        self.color_names.len()
    }

    pub fn add_tile(
        &mut self,
        id: u32,
        north: &str,
        east: &str,
        south: &str,
        west: &str,
        features: FeatureSet,
    ) -> Result<(), TileError> {
        if self.by_id.contains_key(&id) {
            return Err(TileError::DuplicateId(id));
        }
        let t = WangTile {
            id,
            north: self.color(north),
            east: self.color(east),
            south: self.color(south),
            west: self.color(west),
            features,
        };
        self.by_id.insert(id, self.tiles.len());
        self.tiles.push(t);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn get(&self, id: u32) -> Option<&WangTile> {
        self.by_id.get(&id).map(|&i| &self.tiles[i])
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.by_id.get(&id).copied()
    }

    /// Ids of tiles carrying the given feature, ascending.
    pub fn with_feature(&self, f: Feature) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .tiles
            .iter()
            .filter(|t| t.features.contains(f))
            .map(|t| t.id)
            .collect();
        ids.sort_unstable();
        ids
    }
}

/// A finite rectangular window with a partial assignment of tile ids.
/// Cell keys are (dx, dy) offsets from the window origin (bottom-left).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Patch {
    pub origin: (i64, i64),
    pub width: u32,
    pub height: u32,
    pub cells: BTreeMap<(u32, u32), u32>,
}

impl Patch {
    pub fn new(origin: (i64, i64), width: u32, height: u32) -> Self {
        Patch {
            origin,
            width,
            height,
            cells: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, dx: u32, dy: u32, tile: u32) -> Result<(), TileError> {
        if dx >= self.width || dy >= self.height {
            return Err(TileError::CellOutsideWindow(dx, dy, self.width, self.height));
        }
        self.cells.insert((dx, dy), tile);
        Ok(())
    }

    pub fn get(&self, dx: u32, dy: u32) -> Option<u32> {
        self.cells.get(&(dx, dy)).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.len() == (self.width as usize) * (self.height as usize)
    }

    /// Same cells, shifted origin.
    pub fn translated(&self, dx: i64, dy: i64) -> Patch {
        Patch {
            origin: (self.origin.0 + dx, self.origin.1 + dy),
            ..self.clone()
        }
    }
}

/// Required edge colors along the border of a window, per side. `north` and
/// `south` run west-to-east and must have length `width`; `east` and `west`
/// run south-to-north and must have length `height`.
#[derive(Debug, Clone, Default)]
pub struct BoundaryConstraint {
    pub north: Option<Vec<EdgeColor>>,
    pub east: Option<Vec<EdgeColor>>,
    pub south: Option<Vec<EdgeColor>>,
    pub west: Option<Vec<EdgeColor>>,
}

impl BoundaryConstraint {
    pub fn check_dims(&self, width: u32, height: u32) -> Result<(), TileError> {
        for (seq, want) in [
            (&self.north, width),
            (&self.south, width),
            (&self.east, height),
            (&self.west, height),
        ] {
            if let Some(v) = seq {
                if v.len() != want as usize {
                    return Err(TileError::BoundaryLength {
                        got: v.len(),
                        want: want as usize,
                    });
                }
            }
        }
        Ok(())
    }
}

/// One adjacency violation: the two offending cells and the side of the
/// first cell on which the colors disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub a: (u32, u32),
    pub b: (u32, u32),
    pub side: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks every horizontally and vertically adjacent pair of assigned cells.
/// Unassigned cells constrain nothing.
pub fn validate_patch(patch: &Patch, ts: &TileSet) -> Result<ValidityReport, TileError> {
    let mut violations = Vec::new();
    for (&(x, y), &id) in &patch.cells {
        let t = ts.get(id).ok_or(TileError::UnknownTileId(id))?;
        if let Some(rid) = patch.get(x + 1, y) {
            let r = ts.get(rid).ok_or(TileError::UnknownTileId(rid))?;
            if t.east != r.west {
                violations.push(Violation {
                    a: (x, y),
                    b: (x + 1, y),
                    side: "east",
                });
            }
        }
        if let Some(uid) = patch.get(x, y + 1) {
            let u = ts.get(uid).ok_or(TileError::UnknownTileId(uid))?;
            if t.north != u.south {
                violations.push(Violation {
                    a: (x, y),
                    b: (x, y + 1),
                    side: "north",
                });
            }
        }
    }
    Ok(ValidityReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// Parses the tileset text format: one tile per line,
/// `id north east south west [feature,feature,...]`, `#` starts a comment.
pub fn parse_tileset(name: &str, text: &str) -> Result<TileSet, TileError> {
    let mut ts = TileSet::new(name);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 5 && parts.len() != 6 {
            return Err(TileError::Parse {
                line: lineno + 1,
                msg: format!("expected 5 or 6 fields, got {}", parts.len()),
            });
        }
        let id: u32 = parts[0].parse().map_err(|_| TileError::Parse {
            line: lineno + 1,
            msg: format!("bad tile id `{}`", parts[0]),
        })?;
        let mut features = FeatureSet::empty();
        if parts.len() == 6 && parts[5] != "-" {
            for fname in parts[5].split(',') {
                match Feature::parse(fname) {
                    Some(f) => features.insert(f),
                    None => {
                        return Err(TileError::Parse {
                            line: lineno + 1,
                            msg: format!("unknown feature `{fname}`"),
                        })
                    }
                }
            }
        }
        ts.add_tile(id, parts[1], parts[2], parts[3], parts[4], features)
            .map_err(|e| match e {
                TileError::DuplicateId(id) => TileError::DuplicateId(id),
                other => other,
            })?;
    }
    if ts.is_empty() {
        return Err(TileError::Empty);
    }
    Ok(ts)
}

/// Canonical text form; `parse_tileset(emit_tileset(ts))` reproduces `ts`.
pub fn emit_tileset(ts: &TileSet) -> String {
    let mut out = String::new();
    let mut tiles: Vec<&WangTile> = ts.tiles().iter().collect();
    tiles.sort_by_key(|t| t.id);
    for t in tiles {
        out.push_str(&format!(
            "{} {} {} {} {}",
            t.id,
            ts.color_name(t.north),
            ts.color_name(t.east),
            ts.color_name(t.south),
            ts.color_name(t.west)
        ));
        if !t.features.is_empty() {
            out.push_str(&format!(" {}", t.features));
        }
        out.push('\n');
    }
    out
}

/// Parses the patch format: header `x y w h`, then `dx dy tileid` lines.
pub fn parse_patch(text: &str) -> Result<Patch, TileError> {
    let mut patch: Option<Patch> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| TileError::Parse {
            line: lineno + 1,
            msg,
        };
        match &mut patch {
            None => {
                if parts.len() != 4 {
                    return Err(bad("expected header `x y w h`".into()));
                }
                let x: i64 = parts[0].parse().map_err(|_| bad("bad x".into()))?;
                let y: i64 = parts[1].parse().map_err(|_| bad("bad y".into()))?;
                let w: u32 = parts[2].parse().map_err(|_| bad("bad w".into()))?;
                let h: u32 = parts[3].parse().map_err(|_| bad("bad h".into()))?;
                patch = Some(Patch::new((x, y), w, h));
            }
            Some(p) => {
                if parts.len() != 3 {
                    return Err(bad("expected `dx dy tileid`".into()));
                }
                let dx: u32 = parts[0].parse().map_err(|_| bad("bad dx".into()))?;
                let dy: u32 = parts[1].parse().map_err(|_| bad("bad dy".into()))?;
                let id: u32 = parts[2].parse().map_err(|_| bad("bad tile id".into()))?;
                p.set(dx, dy, id)?;
            }
        }
    }
    patch.ok_or(TileError::Parse {
        line: 0,
        msg: "empty patch file".into(),
    })
}

pub fn emit_patch(p: &Patch) -> String {
    let mut out = format!("{} {} {} {}\n", p.origin.0, p.origin.1, p.width, p.height);
    for (&(x, y), &id) in &p.cells {
        out.push_str(&format!("{x} {y} {id}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_tile_set() -> TileSet {
        let mut ts = TileSet::new("t");
        ts.add_tile(1, "a", "a", "a", "a", FeatureSet::empty()).unwrap();
        ts.add_tile(2, "a", "b", "a", "a", FeatureSet::empty()).unwrap();
        ts
    }

    #[test]
    fn empty_patch_is_valid() {
        let ts = two_tile_set();
        let p = Patch::new((0, 0), 3, 3);
        assert!(validate_patch(&p, &ts).unwrap().valid);
    }

    #[test]
    fn single_cell_is_valid() {
        let ts = two_tile_set();
        let mut p = Patch::new((0, 0), 2, 2);
        p.set(0, 0, 2).unwrap();
        assert!(validate_patch(&p, &ts).unwrap().valid);
    }

    #[test]
    fn horizontal_mismatch_reported() {
        let ts = two_tile_set();
        let mut p = Patch::new((0, 0), 2, 1);
        p.set(0, 0, 2).unwrap(); // east = b
        p.set(1, 0, 1).unwrap(); // west = a
        let report = validate_patch(&p, &ts).unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].a, (0, 0));
        assert_eq!(report.violations[0].side, "east");
    }

    #[test]
    fn unknown_tile_id_rejected() {
        let ts = two_tile_set();
        let mut p = Patch::new((0, 0), 1, 1);
        p.set(0, 0, 77).unwrap();
        assert_eq!(validate_patch(&p, &ts), Err(TileError::UnknownTileId(77)));
    }

    #[test]
    fn translation_preserves_validity() {
        let ts = two_tile_set();
        let mut p = Patch::new((0, 0), 2, 1);
        p.set(0, 0, 1).unwrap();
        p.set(1, 0, 1).unwrap();
        let q = p.translated(-5, 7);
        assert!(validate_patch(&q, &ts).unwrap().valid);
    }

    #[test]
    fn parse_one_tile_file() {
        let ts = parse_tileset("x", "1 a a a a blank\n").unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts.get(1).unwrap().features.contains(Feature::Blank));
    }

    #[test]
    fn duplicate_id_rejected() {
        let err = parse_tileset("x", "1 a a a a\n1 b b b b\n").unwrap_err();
        assert_eq!(err, TileError::DuplicateId(1));
    }

    #[test]
    fn emit_parse_roundtrip() {
        let ts = two_tile_set();
        let text = emit_tileset(&ts);
        let ts2 = parse_tileset("t", &text).unwrap();
        assert_eq!(ts2.len(), ts.len());
        for t in ts.tiles() {
            let u = ts2.get(t.id).unwrap();
            assert_eq!(ts.color_name(t.north), ts2.color_name(u.north));
            assert_eq!(ts.color_name(t.east), ts2.color_name(u.east));
            assert_eq!(ts.color_name(t.south), ts2.color_name(u.south));
            assert_eq!(ts.color_name(t.west), ts2.color_name(u.west));
            assert_eq!(t.features, u.features);
        }
        // Canonical form is a fixpoint of emission.
        assert_eq!(text, emit_tileset(&ts2));
    }

    #[test]
    fn patch_roundtrip() {
        let mut p = Patch::new((-2, 3), 4, 2);
        p.set(0, 0, 1).unwrap();
        p.set(3, 1, 2).unwrap();
        let q = parse_patch(&emit_patch(&p)).unwrap();
        assert_eq!(p, q);
    }
}
