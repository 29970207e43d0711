//! FK Glauber dynamics in discrete and continuous time, the grand monotone
//! coupling, Potts Glauber dynamics and Swendsen–Wang.

mod coupling;
mod fk;
mod potts;
mod schedule;
mod sw;

pub use coupling::{coupling_time, CouplingTime, GrandCoupling};
pub use fk::{trace_to_csv, FkChain, TraceEvent};
pub use potts::PottsChain;
pub use schedule::{poisson_event_count, Schedule, UpdateEvent};
pub use sw::sw_step;
