from .endpoint import open_bypass, open_frame, seal, seal_bypass
from .frame import Frame
from .session import (
    ChannelSession,
    SessionConfig,
    derive_iv,
    open_session,
    open_session_pair,
    rekey,
    session_from_config,
)

__all__ = [
    "ChannelSession",
    "Frame",
    "SessionConfig",
    "derive_iv",
    "open_bypass",
    "open_frame",
    "open_session",
    "open_session_pair",
    "rekey",
    "seal",
    "seal_bypass",
    "session_from_config",
]
