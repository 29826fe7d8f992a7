from taxelsim.observability.stats import RunStats
from taxelsim.observability.trace import TSV_FIELDS, TraceFormat, TraceRecord, TraceWriter

__all__ = ["RunStats", "TSV_FIELDS", "TraceFormat", "TraceRecord", "TraceWriter"]
