from tlbraid.braid import BraidWord, braid_writhe
from tlbraid.cmd_parser import CmdParser, Argument


class Parser(CmdParser):
    strands = Argument(int)
    letters = Argument(int, many=True)


if __name__ == '__main__':
    def target(strands, letters):
        print(f"writhe = {braid_writhe(BraidWord(strands, letters))}")
    Parser(target).cmd()
