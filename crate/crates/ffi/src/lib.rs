//! C ABI for the scoregame engine.
//!
//! Games and universes are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns an
//! [`SgStatus`]; on failure [`sg_last_error`] describes the problem. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scoregame::canonical::{canonicalize, Mode};
use scoregame::notation::{parse, print, Style};
use scoregame::order::{Comparator, Relation, Verdict};
use scoregame::score::{final_scores, outcome, Outcome};
use scoregame::sum::sum;
use scoregame::term::{equivalent, identical, negate, GameTerm};
use scoregame::toads_frogs::{tf_parse, tf_to_game};
use scoregame::universe::UniverseSpec;
use scoregame::value::Score;

/// A game term.
pub struct SgGame(GameTerm);

/// A universe of contexts together with its comparison cache.
pub struct SgUniverse(Comparator);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    UniverseError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgOutcome {
    Left = 0,
    Right = 1,
    Next = 2,
    Previous = 3,
    Tie = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStyle {
    Compact = 0,
    Full = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgRelation {
    GreaterEqual = 0,
    LessEqual = 1,
    Equal = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgVerdict {
    Proved = 0,
    Refuted = 1,
    Unrefuted = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgMode {
    Sound = 0,
    Conjectural = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SgStatus, String);

type FfiResult = Result<(), Failure>;

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> FfiResult) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn game<'a>(p: *const SgGame, what: &str) -> Result<&'a GameTerm, Failure> {
    p.as_ref().map(|g| &g.0).ok_or_else(|| Failure(SgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn universe<'a>(p: *const SgUniverse) -> Result<&'a Comparator, Failure> {
    p.as_ref().map(|u| &u.0).ok_or_else(|| Failure(SgStatus::NullPointer, "universe is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> FfiResult {
    if out.is_null() {
        return Err(Failure(SgStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn boxed(g: GameTerm) -> *mut SgGame {
    Box::into_raw(Box::new(SgGame(g)))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses bracket notation such as `{1|0|0}`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_parse(text_ptr: *const c_char, out: *mut *mut SgGame) -> SgStatus {
    guard(|| {
        let g = parse(text(text_ptr, "text")?).map_err(|e| Failure(SgStatus::ParseError, e.to_string()))?;
        put(out, boxed(g))
    })
}

/// A game with no options and the given score, e.g. `"-3/2"`.
///
/// # Safety
/// `score` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_leaf(score: *const c_char, out: *mut *mut SgGame) -> SgStatus {
    guard(|| {
        let s: Score = text(score, "score")?.parse().map_err(|e| Failure(SgStatus::ParseError, format!("{e}")))?;
        put(out, boxed(GameTerm::leaf(s)))
    })
}

/// # Safety
/// `g` must be null or a game returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_game_free(g: *mut SgGame) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live game handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_clone(g: *const SgGame, out: *mut *mut SgGame) -> SgStatus {
    guard(|| put(out, boxed(game(g, "game")?.clone())))
}

/// # Safety
/// `g` must be a live game handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_print(g: *const SgGame, style: SgStyle, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let style = match style {
            SgStyle::Compact => Style::Compact,
            SgStyle::Full => Style::Full,
        };
        put(out, owned_string(print(game(g, "game")?, style)))
    })
}

/// Left and Right final scores as exact decimal strings such as `-1` or `3/4`.
///
/// # Safety
/// `g` must be a live game handle; both outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_game_final_scores(
    g: *const SgGame,
    out_left: *mut *mut c_char,
    out_right: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        if out_left.is_null() || out_right.is_null() {
            return Err(Failure(SgStatus::NullPointer, "output pointer is null".into()));
        }
        let (l, r) = final_scores(game(g, "game")?);
        put(out_left, owned_string(l.to_string()))?;
        put(out_right, owned_string(r.to_string()))
    })
}

/// # Safety
/// `g` must be a live game handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_outcome(g: *const SgGame, out: *mut SgOutcome) -> SgStatus {
    guard(|| {
        let o = match outcome(game(g, "game")?) {
            Outcome::L => SgOutcome::Left,
            Outcome::R => SgOutcome::Right,
            Outcome::N => SgOutcome::Next,
            Outcome::P => SgOutcome::Previous,
            Outcome::T => SgOutcome::Tie,
        };
        put(out, o)
    })
}

/// Long-rule disjunctive sum.
///
/// # Safety
/// `g` and `h` must be live game handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_sum(g: *const SgGame, h: *const SgGame, out: *mut *mut SgGame) -> SgStatus {
    guard(|| put(out, boxed(sum(game(g, "first game")?, game(h, "second game")?))))
}

/// # Safety
/// `g` must be a live game handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_negate(g: *const SgGame, out: *mut *mut SgGame) -> SgStatus {
    guard(|| put(out, boxed(negate(game(g, "game")?))))
}

/// # Safety
/// `g` and `h` must be live game handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_identical(g: *const SgGame, h: *const SgGame, out: *mut bool) -> SgStatus {
    guard(|| put(out, identical(game(g, "first game")?, game(h, "second game")?)))
}

/// # Safety
/// `g` and `h` must be live game handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_equivalent(g: *const SgGame, h: *const SgGame, out: *mut bool) -> SgStatus {
    guard(|| put(out, equivalent(game(g, "first game")?, game(h, "second game")?)))
}

/// Compiles a Toads-and-Frogs strip over `T`, `F`, `B`.
///
/// # Safety
/// `position` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_tf_to_game(position: *const c_char, out: *mut *mut SgGame) -> SgStatus {
    guard(|| {
        let p = tf_parse(text(position, "position")?).map_err(|e| Failure(SgStatus::ParseError, e.to_string()))?;
        put(out, boxed(tf_to_game(&p)))
    })
}

/// The default universe: depth 2, width 2, scores -2..2, at most 3 vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_universe_default(out: *mut *mut SgUniverse) -> SgStatus {
    guard(|| {
        let cmp = Comparator::new(&UniverseSpec::default())
            .map_err(|e| Failure(SgStatus::UniverseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(SgUniverse(cmp))))
    })
}

/// A universe of games with the given depth and width bounds, scores from
/// the comma-separated list, and at most `max_nodes` vertices (0 for no
/// bound).
///
/// # Safety
/// `scores` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_universe_new(
    max_depth: u32,
    max_width: u32,
    scores: *const c_char,
    max_nodes: u64,
    out: *mut *mut SgUniverse,
) -> SgStatus {
    guard(|| {
        let list = text(scores, "scores")?
            .split(',')
            .map(|s| s.trim().parse::<Score>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure(SgStatus::InvalidArgument, format!("scores: {e}")))?;
        let nodes = (max_nodes > 0).then_some(max_nodes);
        let spec = UniverseSpec::new(max_depth as usize, max_width as usize, list, nodes)
            .map_err(|e| Failure(SgStatus::InvalidArgument, e.to_string()))?;
        let cmp = Comparator::new(&spec).map_err(|e| Failure(SgStatus::UniverseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(SgUniverse(cmp))))
    })
}

/// # Safety
/// `u` must be null or a universe returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_universe_free(u: *mut SgUniverse) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// # Safety
/// `u` must be a live universe handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_universe_size(u: *const SgUniverse, out: *mut usize) -> SgStatus {
    guard(|| put(out, universe(u)?.contexts().len()))
}

/// Decides or searches `g REL h` over the universe.
///
/// `out_text` receives the verdict in words. When refuted and `out_witness`
/// is not null, it receives the refuting context; otherwise it is set to
/// null.
///
/// # Safety
/// Handles must be live; `out_verdict` and `out_text` must be valid pointers;
/// `out_witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn sg_compare(
    u: *const SgUniverse,
    relation: SgRelation,
    g: *const SgGame,
    h: *const SgGame,
    out_verdict: *mut SgVerdict,
    out_text: *mut *mut c_char,
    out_witness: *mut *mut SgGame,
) -> SgStatus {
    guard(|| {
        if out_verdict.is_null() || out_text.is_null() {
            return Err(Failure(SgStatus::NullPointer, "output pointer is null".into()));
        }
        let relation = match relation {
            SgRelation::GreaterEqual => Relation::Ge,
            SgRelation::LessEqual => Relation::Le,
            SgRelation::Equal => Relation::Eq,
        };
        let verdict = universe(u)?.verdict(relation, game(g, "first game")?, game(h, "second game")?);
        let kind = match &verdict {
            Verdict::Proved(_) => SgVerdict::Proved,
            Verdict::Refuted(_) => SgVerdict::Refuted,
            Verdict::Unrefuted(_) => SgVerdict::Unrefuted,
        };
        if !out_witness.is_null() {
            out_witness.write(verdict.refutation().map_or(ptr::null_mut(), |r| boxed(r.context.clone())));
        }
        put(out_verdict, kind)?;
        put(out_text, owned_string(verdict.to_string()))
    })
}

/// Canonical form of `g`. `order_seed` 0 is the default reduction order;
/// `out_steps` may be null.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer; `out_steps` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn sg_canonicalize(
    u: *const SgUniverse,
    g: *const SgGame,
    mode: SgMode,
    order_seed: u64,
    out: *mut *mut SgGame,
    out_steps: *mut usize,
) -> SgStatus {
    guard(|| {
        let mode = match mode {
            SgMode::Sound => Mode::Sound,
            SgMode::Conjectural => Mode::Conjectural,
        };
        let (canon, trace) = canonicalize(game(g, "game")?, universe(u)?, mode, order_seed);
        if !out_steps.is_null() {
            out_steps.write(trace.steps.len());
        }
        put(out, boxed(canon))
    })
}
