# Entities module initialization
from entities.structure_function import SequenceKind, Spectrum, SpectrumLevel, StructureFunction
from entities.recurrence import Recurrence, VerificationReport
from entities.relations import InhomogeneousRelation, QuasiCoefficientTrack, QuasiMethod, QuasiPoint
