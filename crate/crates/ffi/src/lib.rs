//! C ABI for the `radohorn` library.
//!
//! Families and partitions are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`RhStatus`]; on failure [`rh_last_error_message`] describes the
//! problem. Vector indices and block numbers are 1-based, as in the Rust API.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use radohorn::cli::{execute, Command, Options};
use radohorn::linalg::RationalVector;
use radohorn::{
    construct_fundamental, partition_into_k, Error, FamilyDocument, OrderedPartition, VectorFamily,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The family contains a zero vector.
    Degenerate = 3,
    BudgetExceeded = 4,
    /// The family does not split into the requested number of sets.
    Infeasible = 5,
    Internal = 6,
    Panic = 7,
}

pub const RH_FLAG_RENDER: u32 = 1;
pub const RH_FLAG_ASCII_ONLY: u32 = 2;
pub const RH_FLAG_TRACE: u32 = 4;

/// A family of rational vectors.
pub struct RhFamily(VectorFamily);

/// An ordered partition of a family into independent blocks.
pub struct RhPartition(OrderedPartition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(RhStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Degenerate { .. } => RhStatus::Degenerate,
            Error::BudgetExceeded { .. } => RhStatus::BudgetExceeded,
            Error::Internal(_) => RhStatus::Internal,
            _ => RhStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RhStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RhStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            RhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure(RhStatus::InvalidInput, format!("{what} is not valid UTF-8")))
}

unsafe fn family_ref<'a>(family: *const RhFamily) -> Result<&'a VectorFamily, Failure> {
    family.as_ref().map(|f| &f.0).ok_or_else(|| null("family"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON family document.
#[no_mangle]
pub unsafe extern "C" fn rh_family_from_json(
    json: *const c_char,
    out: *mut *mut RhFamily,
) -> RhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let family = FamilyDocument::from_json(read_str(json, "json")?)?.to_family()?;
        *out = Box::into_raw(Box::new(RhFamily(family)));
        Ok(())
    })
}

/// Builds a family of `count` integer vectors from `coords`, stored row by
/// row with `dimension` entries per vector.
#[no_mangle]
pub unsafe extern "C" fn rh_family_from_i64(
    dimension: usize,
    count: usize,
    coords: *const i64,
    out: *mut *mut RhFamily,
) -> RhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let total = dimension
            .checked_mul(count)
            .ok_or_else(|| Failure(RhStatus::InvalidInput, "size overflow".into()))?;
        let data: &[i64] = if total == 0 {
            &[]
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            std::slice::from_raw_parts(coords, total)
        };
        if dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()).into());
        }
        let vectors = data
            .chunks(dimension)
            .map(|c| RationalVector::from_integers(c.iter().copied()))
            .collect();
        *out = Box::into_raw(Box::new(RhFamily(VectorFamily::from_vectors(
            dimension, vectors,
        )?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rh_family_free(family: *mut RhFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Number of vectors, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rh_family_len(family: *const RhFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn rh_family_rank(family: *const RhFamily, out: *mut usize) -> RhStatus {
    guard(|| {
        let family = family_ref(family)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = family.rank_of(&family.all());
        Ok(())
    })
}

/// The fundamental partition of `family`.
#[no_mangle]
pub unsafe extern "C" fn rh_fundamental_partition(
    family: *const RhFamily,
    out: *mut *mut RhPartition,
) -> RhStatus {
    guard(|| {
        let family = family_ref(family)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (partition, _) = construct_fundamental(family)?;
        *out = Box::into_raw(Box::new(RhPartition(partition)));
        Ok(())
    })
}

/// A partition into at most `k` independent sets, or `RH_STATUS_INFEASIBLE`.
#[no_mangle]
pub unsafe extern "C" fn rh_partition_into_k(
    family: *const RhFamily,
    k: usize,
    out: *mut *mut RhPartition,
) -> RhStatus {
    guard(|| {
        let family = family_ref(family)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let certificate = partition_into_k(family, k)?;
        match certificate.partition {
            Some(p) => {
                *out = Box::into_raw(Box::new(RhPartition(p)));
                Ok(())
            }
            None => Err(Failure(
                RhStatus::Infeasible,
                format!("the family does not split into {k} independent sets"),
            )),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn rh_partition_free(partition: *mut RhPartition) {
    if !partition.is_null() {
        drop(Box::from_raw(partition));
    }
}

/// Number of blocks, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rh_partition_block_count(partition: *const RhPartition) -> usize {
    partition.as_ref().map_or(0, |p| p.0.len())
}

/// Copies block `block` (1-based) into `indices`.
///
/// `len` always receives the block size. If `capacity` is smaller, only
/// `capacity` indices are written and `RH_STATUS_INVALID_INPUT` is returned.
#[no_mangle]
pub unsafe extern "C" fn rh_partition_block(
    partition: *const RhPartition,
    block: usize,
    indices: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> RhStatus {
    guard(|| {
        let partition = partition.as_ref().ok_or_else(|| null("partition"))?;
        if len.is_null() {
            return Err(null("len"));
        }
        let blocks = partition.0.blocks();
        let chosen = block
            .checked_sub(1)
            .and_then(|b| blocks.get(b))
            .ok_or_else(|| {
                Failure(
                    RhStatus::InvalidInput,
                    format!("block {block} out of range 1..={}", blocks.len()),
                )
            })?;
        *len = chosen.len();
        if capacity > 0 && indices.is_null() {
            return Err(null("indices"));
        }
        for (slot, &i) in chosen.iter().take(capacity).enumerate() {
            *indices.add(slot) = i;
        }
        if capacity < chosen.len() {
            return Err(Failure(
                RhStatus::InvalidInput,
                format!(
                    "capacity {capacity} is below the block size {}",
                    chosen.len()
                ),
            ));
        }
        Ok(())
    })
}

/// Runs a CLI command on a JSON family and returns the JSON report.
///
/// `command` is one of `partition`, `analyze`, `construct`, `witness`,
/// `remove` or `oracle`; `k` and `l` are ignored where unused. `flags`
/// combines the `RH_FLAG_*` bits. On `RH_STATUS_OK`, `report` receives a
/// string to release with [`rh_string_free`] and `exit_code` the exit code
/// the command line tool would use.
#[no_mangle]
pub unsafe extern "C" fn rh_run_command_json(
    family_json: *const c_char,
    command: *const c_char,
    k: usize,
    l: usize,
    flags: u32,
    report: *mut *mut c_char,
    exit_code: *mut u8,
) -> RhStatus {
    guard(|| {
        if report.is_null() || exit_code.is_null() {
            return Err(null("output pointer"));
        }
        let family =
            FamilyDocument::from_json(read_str(family_json, "family_json")?)?.to_family()?;
        let command = match read_str(command, "command")? {
            "partition" => Command::Partition,
            "analyze" => Command::Analyze { k },
            "construct" => Command::Construct,
            "witness" => Command::Witness { k },
            "remove" => Command::Remove { k, l },
            "oracle" => Command::Oracle,
            other => {
                return Err(Failure(
                    RhStatus::InvalidInput,
                    format!("unknown command {other:?}"),
                ))
            }
        };
        let options = Options {
            render: flags & RH_FLAG_RENDER != 0,
            ascii_only: flags & RH_FLAG_ASCII_ONLY != 0,
            trace: flags & RH_FLAG_TRACE != 0,
        };
        let outcome = execute(command, "<memory>", &family, options)?;
        let text = CString::new(outcome.report)
            .map_err(|_| Failure(RhStatus::Internal, "report contains a nul byte".into()))?;
        *report = text.into_raw();
        *exit_code = outcome.status.code();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rh_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
