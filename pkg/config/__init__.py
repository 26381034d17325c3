"""Configuration Module"""

