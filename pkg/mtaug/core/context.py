from contextvars import ContextVar


run_id_ctx: ContextVar[str] = ContextVar("run_id", default="-")
