//! Chain extension processes.

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{Error, Result};

/// A source of chain extension times, returned in increasing order.
pub trait ExtensionProcess {
    fn next_extension<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64;
}

/// Renewal chain: after every extension producers are frozen for `freeze`
/// seconds, then wait an exponential time for the next block.
#[derive(Debug, Clone)]
pub struct RenewalChain {
    wait: Exp<f64>,
    freeze: f64,
    clock: f64,
}

impl RenewalChain {
    pub fn new(rate: f64, freeze: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::invalid("rate", "must be finite and > 0"));
        }
        if !(freeze.is_finite() && freeze >= 0.0) {
            return Err(Error::invalid("delay", "must be finite and >= 0"));
        }
        Ok(RenewalChain {
            wait: Exp::new(rate).expect("positive rate"),
            freeze,
            clock: 0.0,
        })
    }
}

impl ExtensionProcess for RenewalChain {
    fn next_extension<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        self.clock += self.wait.sample(rng);
        let t = self.clock;
        self.clock += self.freeze;
        t
    }
}

/// M/D/1 synchronization pipeline: Poisson arrivals, FIFO, fixed service.
/// The chain grows at each departure.
#[derive(Debug, Clone)]
pub struct PipelinedQueue {
    arrivals: Exp<f64>,
    service: f64,
    last_arrival: f64,
    last_departure: f64,
}

impl PipelinedQueue {
    pub fn new(rate: f64, service: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::invalid("rate", "must be finite and > 0"));
        }
        if !(service.is_finite() && service >= 0.0) {
            return Err(Error::invalid("delay", "must be finite and >= 0"));
        }
        let rho = rate * service;
        if rho >= 1.0 {
            return Err(Error::UnstableQueue { rho });
        }
        Ok(PipelinedQueue {
            arrivals: Exp::new(rate).expect("positive rate"),
            service,
            last_arrival: 0.0,
            last_departure: 0.0,
        })
    }
}

impl ExtensionProcess for PipelinedQueue {
    fn next_extension<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        self.last_arrival += self.arrivals.sample(rng);
        self.last_departure = self.last_arrival.max(self.last_departure) + self.service;
        self.last_departure
    }
}

/// Either adversarial synchronization model behind one type.
#[derive(Debug, Clone)]
pub enum AdversaryChain {
    Serial(RenewalChain),
    Pipelined(PipelinedQueue),
}

impl ExtensionProcess for AdversaryChain {
    fn next_extension<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        match self {
            AdversaryChain::Serial(c) => c.next_extension(rng),
            AdversaryChain::Pipelined(q) => q.next_extension(rng),
        }
    }
}
