from tlbraid.braid import BraidWord, plat_close, trace_components, writhe
from tlbraid.kauffman import bracket, jones, jones_at_root
from tlbraid.pathmodel import ModelParams, enumerate_basis, rho_of_word, alpha_expectation
from tlbraid.encoding import EncodedBasis, encode_gate, reduce_to_b8
from tlbraid.generators import GeneratorWord, GeneratorSet, path_model_generators, seed_pair
from tlbraid.density import su2_generate, bridge_synthesize, decouple_search
from tlbraid.nets import EpsilonNet, build_net, aux_generators, transfer_net, solovay_kitaev
from tlbraid.compiler import CircuitIR, parse_circuit, compile_circuit
from tlbraid.config import settings
