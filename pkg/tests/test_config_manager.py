"""
Tests for layered configuration and the event dispatcher.
"""
import json

import pytest

from core.config_manager import ConfigManager, MAX_ORDER_CAP_ENV
from core.errors import ConfigError
from core.event_system import Event, EventDispatcher, EventType, notify


class TestConfigManager:

    def test_shipped_defaults(self):
        config = ConfigManager(environ={})
        assert config.max_order_cap == 64
        assert config.get("quasi.default_c") == "0"
        assert config.get("output.default_format") == "json"
        assert config.get("missing.key", "fallback") == "fallback"

    def test_missing_shipped_file_uses_builtins(self, tmp_path):
        config = ConfigManager(default_config_path=str(tmp_path / "absent.json"), environ={})
        assert config.get("spectrum.default_n_max") == 10

    def test_user_file_is_merged(self, tmp_path):
        user = tmp_path / "user.json"
        user.write_text(json.dumps({"detection": {"default_max_order": 9}}), encoding="utf-8")
        config = ConfigManager(str(user), environ={})
        assert config.get("detection.default_max_order") == 9
        assert config.max_order_cap == 64

    def test_missing_user_file(self, tmp_path):
        with pytest.raises(ConfigError):
            ConfigManager(str(tmp_path / "nope.json"), environ={})

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
    def test_invalid_user_file(self, tmp_path, content):
        user = tmp_path / "user.json"
        user.write_text(content, encoding="utf-8")
        with pytest.raises(ConfigError):
            ConfigManager(str(user), environ={})

    def test_environment_cap(self):
        assert ConfigManager(environ={MAX_ORDER_CAP_ENV: "7"}).max_order_cap == 7

    @pytest.mark.parametrize("section,key,value", [
        ("detection", "max_order_cap", "lots"),
        ("detection", "max_order_cap", 0),
        ("detection", "default_max_order", 2.5),
        ("spectrum", "default_n_max", "ten"),
        ("quasi", "default_n_max", -1),
        ("table", "default_r_max", True),
    ])
    def test_invalid_integer_in_user_file(self, tmp_path, section, key, value):
        user = tmp_path / "user.json"
        user.write_text(json.dumps({section: {key: value}}), encoding="utf-8")
        with pytest.raises(ConfigError) as info:
            ConfigManager(str(user), environ={})
        assert f"{section}.{key}" in str(info.value)

    def test_section_replaced_by_scalar(self, tmp_path):
        user = tmp_path / "user.json"
        user.write_text(json.dumps({"detection": 5}), encoding="utf-8")
        with pytest.raises(ConfigError):
            ConfigManager(str(user), environ={})
        with pytest.raises(ConfigError):
            ConfigManager(str(user), environ={MAX_ORDER_CAP_ENV: "8"})

    @pytest.mark.parametrize("value", ["seven", "0", "-3"])
    def test_invalid_environment_cap(self, value):
        with pytest.raises(ConfigError):
            ConfigManager(environ={MAX_ORDER_CAP_ENV: value})


class TestEventDispatcher:

    def test_listeners_receive_events(self):
        dispatcher = EventDispatcher()
        received = []
        dispatcher.register_listener(EventType.SINGULAR_POINT, received.append)
        notify(dispatcher, EventType.SINGULAR_POINT, None, n=3)
        assert received[0].data == {"n": 3}

    def test_failing_listener_does_not_stop_dispatch(self):
        dispatcher = EventDispatcher()
        received = []

        def broken(event):
            raise RuntimeError("listener failure")

        dispatcher.register_listener(EventType.COMMAND_STARTED, broken)
        dispatcher.register_listener(EventType.COMMAND_STARTED, received.append)
        dispatcher.dispatch_event(Event(EventType.COMMAND_STARTED))
        assert len(received) == 1

    def test_unregister(self):
        dispatcher = EventDispatcher()
        received = []
        dispatcher.register_listener(EventType.COMMAND_FINISHED, received.append)
        dispatcher.unregister_listener(EventType.COMMAND_FINISHED, received.append)
        dispatcher.dispatch_event(Event(EventType.COMMAND_FINISHED))
        assert received == []

    def test_notify_without_dispatcher(self):
        notify(None, EventType.COMMAND_STARTED)
