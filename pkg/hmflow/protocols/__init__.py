from hmflow.protocols.problem_protocol import ProblemProtocol

__all__ = ["ProblemProtocol"]
