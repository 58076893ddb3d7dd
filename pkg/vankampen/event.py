"""
Events streamed by the long-running suites.

A suite yields `start` first and `end` last; in between come `progress` after
each finished partition, `violation` for every failed instance and `error` when
a worker raised. Worker threads post to an `EventBroker`; names starting with
an underscore are internal bookkeeping and never leave the suite.
"""
from typing import Any, Dict, Iterator, Optional
import queue

EVENT_TYPES = ('start', 'progress', 'violation', 'error', 'end')


class Event:
    """
    One message of a suite stream.

    Attributes:
        source (str): "<Kind>:<subject>", e.g. "Laws:λ(S3)" or "XMod:Z3<S3".
        type (str): One of EVENT_TYPES, or an internal "_"-prefixed name.
        payload (Dict[str, Any]): Type-specific data; `end` carries "result".
    """
    def __init__(self, source: str, type: str, payload: Optional[Dict[str, Any]] = None):
        self.source = source
        self.type = type
        self.payload = payload or {}

    @property
    def subject(self) -> str:
        return self.source.split(':', 1)[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {"source": self.source, "type": self.type, "payload": self.payload}

    def __repr__(self):
        return f"Event({self.source!r}, {self.type!r}, {self.payload!r})"


class EventBroker:
    """Thread-safe mailbox between suite workers and the generator that yields their events."""
    def __init__(self):
        self.queue: 'queue.Queue[Event]' = queue.Queue()

    def emit(self, source: str, type: str, payload: Optional[Dict[str, Any]] = None):
        self.queue.put(Event(source, type, payload))

    def get(self) -> Event:
        """Blocks until a worker posts."""
        return self.queue.get()


def pass_event(iterator: Iterator[Event]) -> Optional[Event]:
    """Drains a stream and returns its last event."""
    event: Optional[Event] = None
    for event in iterator:
        pass
    return event


def final_result(iterator: Iterator[Event]) -> Any:
    """
    The report carried by the `end` event of a stream.

    Raises:
        RuntimeError: If the stream was empty or ended with an `error` event.
    """
    event = pass_event(iterator)
    if event is None:
        raise RuntimeError("Event stream was empty.")
    if event.type == "error":
        raise RuntimeError(event.payload.get("message", "unknown error"))
    return event.payload.get("result")
