"""Setup Script"""
from setuptools import setup

setup()
