use std::fmt::Write;

use super::{LosError, LosLevel};
use crate::dsl::lexer::{tokenize, Cursor, TokenKind};
use crate::dsl::{DslError, ErrorKind, ParseError, Position};
use crate::fis::Interval;

/// Nominal capacity per lane used for the default flow domain.
pub const FLOW_PER_LANE: f64 = 2000.0;
pub const DEFAULT_SPEED_MAX: f64 = 80.0;

/// Axis-aligned rectangle `[flow_lo, flow_hi) x [speed_lo, speed_hi)`.
///
/// The high edges are open unless they coincide with the domain maximum,
/// so rectangles sharing an edge never both claim a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub flow: Interval,
    pub speed: Interval,
}

impl Rect {
    pub fn new(flow: (f64, f64), speed: (f64, f64)) -> Result<Self, LosError> {
        Ok(Self {
            flow: Interval::new(flow.0, flow.1)?,
            speed: Interval::new(speed.0, speed.1)?,
        })
    }

    pub fn area(&self) -> f64 {
        self.flow.span() * self.speed.span()
    }

    fn interiors_overlap(&self, other: &Rect) -> bool {
        self.flow.lo() < other.flow.hi()
            && other.flow.lo() < self.flow.hi()
            && self.speed.lo() < other.speed.hi()
            && other.speed.lo() < self.speed.hi()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub level: LosLevel,
    pub rect: Rect,
}

/// Ground-truth level of service as disjoint rectangles in (flow, speed).
#[derive(Debug, Clone, PartialEq)]
pub struct LosRegionModel {
    flow_domain: Interval,
    speed_domain: Interval,
    lanes: u32,
    regions: Vec<Region>,
}

fn half_open(interval: Interval, domain: Interval, x: f64) -> bool {
    interval.lo() <= x && (x < interval.hi() || (x == interval.hi() && x == domain.hi()))
}

impl LosRegionModel {
    pub fn new(
        flow_domain: Interval,
        speed_domain: Interval,
        lanes: u32,
        regions: Vec<Region>,
    ) -> Result<Self, LosError> {
        if lanes == 0 {
            return Err(LosError::InvalidLanes);
        }
        for (i, r) in regions.iter().enumerate() {
            let inside = flow_domain.contains(r.rect.flow.lo())
                && flow_domain.contains(r.rect.flow.hi())
                && speed_domain.contains(r.rect.speed.lo())
                && speed_domain.contains(r.rect.speed.hi());
            if !inside {
                return Err(LosError::RegionOutsideDomain {
                    index: i,
                    level: r.level,
                });
            }
            if let Some(j) = regions[..i].iter().position(|q| q.rect.interiors_overlap(&r.rect)) {
                return Err(LosError::OverlappingRegions { first: j, second: i });
            }
        }
        Ok(Self {
            flow_domain,
            speed_domain,
            lanes,
            regions,
        })
    }

    pub fn flow_domain(&self) -> Interval {
        self.flow_domain
    }

    pub fn speed_domain(&self) -> Interval {
        self.speed_domain
    }

    pub fn lanes(&self) -> u32 {
        self.lanes
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn contains(&self, rect: &Rect, flow: f64, speed: f64) -> bool {
        half_open(rect.flow, self.flow_domain, flow) && half_open(rect.speed, self.speed_domain, speed)
    }

    /// Ground-truth level at (flow, speed), or `None` when no rectangle
    /// claims the point.
    pub fn oracle_label(&self, flow: f64, speed: f64) -> Result<Option<LosLevel>, LosError> {
        check_axis("flow", self.flow_domain, flow)?;
        check_axis("speed", self.speed_domain, speed)?;
        Ok(self
            .regions
            .iter()
            .find(|r| self.contains(&r.rect, flow, speed))
            .map(|r| r.level))
    }
}

fn check_axis(axis: &'static str, domain: Interval, value: f64) -> Result<(), LosError> {
    if domain.contains(value) {
        Ok(())
    } else {
        Err(LosError::OutOfDomain {
            axis,
            value,
            lo: domain.lo(),
            hi: domain.hi(),
        })
    }
}

/// Level, flow bounds, speed bounds and position of one `region` line.
type RegionDecl = (f64, (f64, f64), (f64, f64), Position);

/// Parses a `.los` region file:
///
/// ```text
/// lanes 3
/// domain flow 0 6000
/// domain speed 0 80
/// region 1 flow 0 1500 speed 50 80
/// ```
///
/// `domain` lines are optional; flow defaults to `[0, 2000 * lanes]` and
/// speed to `[0, 80]`. `lanes` defaults to 1.
pub fn parse_regions(source: &str) -> Result<LosRegionModel, DslError> {
    let mut cur = Cursor::new(tokenize(source)?);
    let mut lanes: Option<(f64, Position)> = None;
    let mut flow_domain: Option<(f64, f64, Position)> = None;
    let mut speed_domain: Option<(f64, f64, Position)> = None;
    let mut regions: Vec<RegionDecl> = Vec::new();

    loop {
        cur.skip_newlines();
        let tok = cur.peek().clone();
        match &tok.kind {
            TokenKind::Eof => break,
            TokenKind::Word(w) if w == "lanes" => {
                cur.next();
                let (n, pos) = cur.number("lane count")?;
                cur.end_of_statement()?;
                if lanes.replace((n, pos)).is_some() {
                    return Err(ParseError::new(tok.pos, ErrorKind::Duplicate, "lanes declared more than once").into());
                }
            }
            TokenKind::Word(w) if w == "domain" => {
                cur.next();
                let slot = if cur.peek_is_word("flow") {
                    &mut flow_domain
                } else if cur.peek_is_word("speed") {
                    &mut speed_domain
                } else {
                    return Err(cur.unexpected("'flow' or 'speed'").into());
                };
                cur.next();
                let (lo, _) = cur.number("domain lower bound")?;
                let (hi, _) = cur.number("domain upper bound")?;
                cur.end_of_statement()?;
                if slot.replace((lo, hi, tok.pos)).is_some() {
                    return Err(
                        ParseError::new(tok.pos, ErrorKind::Duplicate, "domain declared more than once").into(),
                    );
                }
            }
            TokenKind::Word(w) if w == "region" => {
                cur.next();
                let (level, _) = cur.number("level 1-6")?;
                cur.keyword("flow")?;
                let (f0, _) = cur.number("flow lower bound")?;
                let (f1, _) = cur.number("flow upper bound")?;
                cur.keyword("speed")?;
                let (s0, _) = cur.number("speed lower bound")?;
                let (s1, _) = cur.number("speed upper bound")?;
                cur.end_of_statement()?;
                regions.push((level, (f0, f1), (s0, s1), tok.pos));
            }
            _ => return Err(cur.unexpected("'lanes', 'domain' or 'region'").into()),
        }
    }

    let mut errs = Vec::new();
    let start = Position { line: 1, column: 1 };
    let lane_count = match lanes {
        None => Some(1),
        Some((n, pos)) => {
            if n >= 1.0 && n.fract() == 0.0 && n <= f64::from(u32::MAX) {
                Some(n as u32)
            } else {
                errs.push(ParseError::new(
                    pos,
                    ErrorKind::Invalid,
                    "lane count must be a positive integer",
                ));
                None
            }
        }
    };
    let mut domain = |decl: Option<(f64, f64, Position)>, default_hi: f64, axis: &str| {
        let (lo, hi, pos) = decl.unwrap_or((0.0, default_hi, start));
        match Interval::new(lo, hi) {
            Ok(i) => Some(i),
            Err(_) => {
                errs.push(ParseError::new(
                    pos,
                    ErrorKind::Invalid,
                    format!("{axis} domain must satisfy lo < hi"),
                ));
                None
            }
        }
    };
    let flow = domain(flow_domain, FLOW_PER_LANE * f64::from(lane_count.unwrap_or(1)), "flow");
    let speed = domain(speed_domain, DEFAULT_SPEED_MAX, "speed");

    let mut built: Vec<(Region, Position)> = Vec::new();
    for (level, f, s, pos) in regions {
        let lvl = (level.fract() == 0.0 && (1.0..=6.0).contains(&level))
            .then(|| LosLevel::new(level as u8))
            .flatten();
        let Some(lvl) = lvl else {
            errs.push(ParseError::new(
                pos,
                ErrorKind::Invalid,
                format!("level must be an integer 1-6, got {level}"),
            ));
            continue;
        };
        let rect = match Rect::new(f, s) {
            Ok(r) => r,
            Err(_) => {
                errs.push(ParseError::new(
                    pos,
                    ErrorKind::Invalid,
                    "region bounds must satisfy lo < hi",
                ));
                continue;
            }
        };
        if let (Some(fd), Some(sd)) = (flow, speed) {
            let inside = fd.contains(f.0) && fd.contains(f.1) && sd.contains(s.0) && sd.contains(s.1);
            if !inside {
                errs.push(ParseError::new(
                    pos,
                    ErrorKind::Invalid,
                    "region lies outside the domain",
                ));
                continue;
            }
        }
        if let Some((_, other)) = built.iter().find(|(r, _)| r.rect.interiors_overlap(&rect)) {
            errs.push(ParseError::new(
                pos,
                ErrorKind::Invalid,
                format!("region overlaps the region on line {}", other.line),
            ));
            continue;
        }
        built.push((Region { level: lvl, rect }, pos));
    }

    if !errs.is_empty() {
        errs.sort_by_key(|e| (e.line, e.column));
        return Err(DslError { errors: errs });
    }
    let (Some(flow), Some(speed), Some(lanes)) = (flow, speed, lane_count) else {
        unreachable!("missing values always record an error");
    };
    LosRegionModel::new(flow, speed, lanes, built.into_iter().map(|(r, _)| r).collect())
        .map_err(|e| ParseError::new(start, ErrorKind::Invalid, e.to_string()).into())
}

pub fn serialize_regions(model: &LosRegionModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lanes {}", model.lanes);
    let _ = writeln!(out, "domain flow {} {}", model.flow_domain.lo(), model.flow_domain.hi());
    let _ = writeln!(
        out,
        "domain speed {} {}",
        model.speed_domain.lo(),
        model.speed_domain.hi()
    );
    for r in &model.regions {
        let _ = writeln!(
            out,
            "region {} flow {} {} speed {} {}",
            r.level,
            r.rect.flow.lo(),
            r.rect.flow.hi(),
            r.rect.speed.lo(),
            r.rect.speed.hi()
        );
    }
    out
}
