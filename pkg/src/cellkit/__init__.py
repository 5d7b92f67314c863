"""
cellkit: exact Kazhdan-Lusztig and Murphy bases for the Iwahori-Hecke
algebra of the symmetric group, with cells, the a-function, the ring J,
and mechanical verification of their structural identities at desk scale.
"""

__version__ = "0.1.0"
