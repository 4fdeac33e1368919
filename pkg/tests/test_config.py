"""Tests for ConfigManager."""

import pytest
import tempfile
from pathlib import Path

from src.phinmod.config import ConfigManager, DEFAULT_CONFIG, SETTING_RULES
from src.phinmod.error_handler import ConfigError


@pytest.fixture
def temp_config(monkeypatch):
    """Create a temporary config directory."""
    with tempfile.TemporaryDirectory() as tmpdir:
        def mock_config_dir(self):
            path = Path(tmpdir) / "phinmod"
            path.mkdir(parents=True, exist_ok=True)
            return path
        monkeypatch.setattr(ConfigManager, '_get_config_dir', mock_config_dir)
        yield tmpdir


def test_default_config_loaded(temp_config):
    """Test that default config is loaded correctly."""
    config = ConfigManager()
    assert config.get('prime') == 2
    assert config.get('ramification') == 6
    assert config.get('certify_seed') == 20140101


def test_config_save_and_load(temp_config):
    """Test that config persists across instances."""
    config = ConfigManager()
    config.set('certify_samples', 50)

    config2 = ConfigManager()
    assert config2.get('certify_samples') == 50
    assert config2.get_config_path().exists()


def test_corrupt_file_falls_back(temp_config):
    """Test that an unreadable config file yields the defaults."""
    config = ConfigManager()
    config.get_config_path().write_text("{not json", encoding="utf-8")
    assert ConfigManager().config == DEFAULT_CONFIG


def test_new_keys_merged(temp_config):
    """Test that keys missing from an old file come from the defaults."""
    config = ConfigManager()
    config.get_config_path().write_text('{"prime": 3}', encoding="utf-8")
    loaded = ConfigManager()
    assert loaded.get('prime') == 3
    assert loaded.get('oracle_samples') == DEFAULT_CONFIG['oracle_samples']


def test_reset_to_defaults(temp_config):
    """Test resetting config to defaults."""
    config = ConfigManager()
    config.set('certify_workers', 8)
    config.reset_to_defaults()
    assert config.get('certify_workers') == DEFAULT_CONFIG['certify_workers']


def test_update_multiple_values(temp_config):
    """Test updating multiple config values at once."""
    config = ConfigManager()
    config.update({
        'prime': 3,
        'ramification': 2
    })
    assert config.field_defaults() == {"prime": 3, "ramification": 2}


def test_get_with_default(temp_config):
    """Test getting a non-existent key with default."""
    config = ConfigManager()
    assert config.get('nonexistent_key', 'default_value') == 'default_value'


def test_invalid_value_rejected(temp_config):
    """Test that set refuses a value outside the setting's range."""
    config = ConfigManager()
    with pytest.raises(ConfigError) as exc:
        config.set('prime', 4)
    assert exc.value.errors == ["prime must be a prime number, got 4"]
    assert config.get('prime') == 2


def test_update_is_all_or_nothing(temp_config):
    """Test that one bad value keeps the whole update out."""
    config = ConfigManager()
    with pytest.raises(ConfigError):
        config.update({'certify_samples': 10, 'certify_workers': 0})
    assert config.get('certify_samples') == DEFAULT_CONFIG['certify_samples']


def test_bad_stored_value_falls_back(temp_config):
    """Test that a bad value in the file is replaced by its default."""
    config = ConfigManager()
    config.get_config_path().write_text('{"ramification": 0, "certify_seed": 5}', encoding="utf-8")
    loaded = ConfigManager()
    assert loaded.get('ramification') == 6
    assert loaded.get('certify_seed') == 5


def test_certify_defaults(temp_config):
    """Test the campaign settings handed to certify."""
    config = ConfigManager()
    config.set('certify_workers', 3)
    assert config.certify_defaults() == {
        "samples": 2000, "seed": 20140101, "workers": 3, "oracle_samples": 200,
    }


def test_prime_rule():
    """Test that the prime setting accepts exactly the primes."""
    check, text = SETTING_RULES["prime"]
    assert [n for n in range(20) if check(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not check("7")
    assert text == "a prime number"
