from hmflow.signals.signal import Signal, SignalEmitter

__all__ = ["Signal", "SignalEmitter"]
