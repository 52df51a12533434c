from montecensus.tangle.base import *
from montecensus.tangle.strands import *
