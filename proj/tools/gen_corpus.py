# Regenerates data/corpus/restaurant.xml: python3 tools/gen_corpus.py data/corpus/restaurant.xml
import os, sys, html
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
def ent(c=("nicole",), r=("veg_r",), f=("lentil_soup",), w="waitress", k="cook1", extra=()):
    out=[]
    out+= [f"customer({x})." for x in c]
    out+= [f"restaurant({x})." for x in r]
    out+= [f"food({x})." for x in f]
    out+= [f"waitress({w})."] if w else []
    out+= [f"cook({k})."] if k else []
    out+= list(extra)
    return out
def hpd(a,s,v="true"): return f"st_hpd({a}, {v}, {s})."
def obs(a,s,v="true"): return f"st_obs({a}, {v}, {s})."
E=[]  # (id, source, type, scenario, reconstructed, limitation, excerpt, lines)
def add(id,src,typ,scen,rec,lim,exc,lines): E.append((id,src,typ,scen,rec,lim,exc,lines))
def seq(*acts): return [hpd(a,i) for i,a in enumerate(acts)]
# reconstructed stories
for name,src,typ,scen,lim,exc in [
 ("ex1","mueller","normal","normal","","Nicole ate lentil soup at a vegetarian place; the waitress set it on her table and she left afterwards."),
 ("ex2","hand_crafted","exception","serendipity","","The owner covered Nicole's lentil soup, so after eating she simply went home."),
 ("ex3","hand_crafted","exception","diagnosis-dish","","Nicole asked for lentil soup but miso soup is what reached her table."),
 ("ex4","hand_crafted","exception","waiter-serendipity","","In a rush, Nicole settled up as soon as her soup was served and only then ate."),
 ("ex5","google_books","variation","multi-customer","new-only","Nicole and Sam shared a table; each asked for a different soup and both finished their bowls."),
 ("futile","hand_crafted","exception","futile","","Right as Nicole took her seat, the owner shut the restaurant for the day."),
 ("wrong_bill","hand_crafted","exception","diagnosis-bill","","After Nicole finished her soup the waitress handed her a check that belonged to another table."),
]:
    body=open(os.path.join(ROOT,"data","stories",f"{name}.lp")).read().splitlines()
    body=[l for l in body if l and not l.startswith('%')]
    add(name.replace('_','-'),src,typ,scen,True,lim,exc,body)

C,R,F,W,K="C","R","F","W","K"
def story(c,r,f,w,k,acts,extra_ent=(),foods=None,obsl=()):
    e=ent((c,),(r,),foods or (f,),w,k,extra_ent)
    lines=[]
    for i,a in enumerate(acts):
        a=a.format(c=c,r=r,f=f,w=w,k=k)
        if a.startswith("obs:"):
            lines.append(obs(a[4:],i))
        else:
            lines.append(hpd(a,i))
    return e+lines
normal=[
 ("yt-n1","youtube","Tom walked into the diner, asked for pancakes, ate them and went out.",("tom","diner","pancakes","amy","chef"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","leave({c})"]),
 ("yt-n2","youtube","Lisa came in, sat down, ordered a salad, ate, paid and left.",("lisa","bistro","salad","mark","cook2"),["enter({c},{r})","sit({c})","order({c},{f},{w})","eat({c},{f})","pay({c},b)","leave({c})"]),
 ("yt-n3","youtube","Ken entered the cafe and ordered a sandwich.",("ken","cafe","sandwich","jane","bob"),["enter({c},{r})","order({c},{f},{w})"]),
 ("yt-n4","youtube","The host welcomed Ana at the door; she ordered soup and ate it.",("ana","grill","soup","host","chef"),["enter({c},{r})","greet({w},{c})","order({c},{f},{w})","eat({c},{f})"]),
 ("yt-n5","youtube","Raj was shown to a table, sat, ordered curry, got it served, ate and left.",("raj","spice","curry","mia","ravi"),["enter({c},{r})","lead_to({w},{c},t)","sit({c})","order({c},{f},{w})","put({w},{f},t)","eat({c},{f})","leave({c})"]),
 ("yt-n6","youtube","Eva looked at the menu, ordered a burger, ate, asked for the check, paid and left.",("eva","burger_bar","burger","tim","joe"),["enter({c},{r})","pick_up({c},m,t)","order({c},{f},{w})","eat({c},{f})","request({c},b,{w})","pay({c},b)","leave({c})"]),
 ("gb-n1","google_books","He ordered the fish, ate slowly, stood up and left the inn.",("henry","inn","fish","molly","cook3"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","stand_up({c})","leave({c})"]),
 ("gb-n2","google_books","The cook prepared her omelette, the waiter brought it and she ate.",("clara","tavern","omelette","peter","marco"),["enter({c},{r})","order({c},{f},{w})","prepare({k},{f},{w})","put({w},{f},t)","eat({c},{f})"]),
 ("gb-n3","google_books","After his steak the waiter laid the bill down and he paid it.",("george","steakhouse","steak","lucy","sam_cook"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","put({w},b,t)","pay({c},b)"]),
 ("gb-n4","google_books","Offered tea or scones, she chose scones, ate them and departed.",("edith","tearoom","scones","alice","martha"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","leave({c})"],("tea",)),
 ("hc-n1","hand_crafted","Omar ordered rice; later he was full and went home.",("omar","kebab","rice","sara","ali"),["enter({c},{r})","order({c},{f},{w})","obs:satiated({c})","leave({c})"]),
 ("hc-n2","hand_crafted","Zoe ate noodles and her bill was settled before she left.",("zoe","noodle_bar","noodles","li","wei"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","obs:paid(b)","leave({c})"]),
]
for id,src,exc,names,acts,*more in normal:
    c,r,f,w,k=names
    foods=(f,)+tuple(more[0]) if more else None
    add(id,src,"normal","normal",False,"",exc,story(c,r,f,w,k,acts,foods=foods))

exc=[
 ("yt-e1","youtube","Ben asked for tomato soup but ended up eating onion soup.",("ben","soup_shop","tomato_soup","kate","chef"),["enter({c},{r})","order({c},{f},{w})","eat({c},onion_soup)"],("onion_soup",),()),
 ("yt-e2","youtube","Sue ordered a latte, a mocha was put in front of her, and she did not drink anything.",("sue","coffee_house","latte","dan","barista"),["enter({c},{r})","order({c},{f},{w})","put({w},mocha,t)","obs:satiated({c}):false"],("mocha",),()),
 ("yt-e3","youtube","Paul's friend picked up the tab after the meal.",("paul","diner2","chili","ivy","cook4"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","pay(friend,b)","leave({c})"],(),("people(friend).",)),
 ("yt-e4","youtube","Nina ordered a wrap; the cook heard falafel and made that.",("nina","wrap_hut","wrap","omar_w","cook5"),["enter({c},{r})","order({c},{f},{w})","prepare({k},falafel,{w})"],("falafel",),()),
 ("yt-e5","youtube","Leo asked for pizza but the waiter told the kitchen pasta.",("leo","trattoria","pizza","gia","luigi"),["enter({c},{r})","order({c},{f},{w})","request({w},pasta,{k})"],("pasta",),()),
 ("yt-e6","youtube","Right after Amy ordered, the manager closed the place.",("amy","corner_cafe","bagel","ross","cook6"),["enter({c},{r})","order({c},{f},{w})","close(manager,{r})"],(),("people(manager).",)),
 ("gb-e1","google_books","She finished her pie; the house closed behind her as she paid and left.",("ruth","pie_shop","pie","hal","cook7"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","close(keeper,{r})","leave({c})"],(),("people(keeper).",)),
 ("gb-e2","google_books","The kitchen cooked his chops properly, yet the girl carried stew to his table.",("arthur","chophouse","chops","nell","cook8"),["enter({c},{r})","order({c},{f},{w})","prepare({k},{f},{w})","put({w},stew,t)"],("stew",),()),
 ("gb-e3","google_books","The waiter brought the check and her uncle paid it.",("jane2","hotel_dining","roast","fred","cook9"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","put({w},b,t)","pay(uncle,b)"],(),("people(uncle).",)),
 ("gt-e1","gutenberg","Served broth instead of chowder, he shrugged and ate it.",("silas","chowder_house","chowder","bess","cook10"),["enter({c},{r})","order({c},{f},{w})","put({w},broth,t)","eat({c},broth)"],("broth",),()),
 ("gt-e2","gutenberg","Of the three dishes on the board, she ordered mutton and got beef.",("hester","eating_house","mutton","tom_w","cook11"),["enter({c},{r})","order({c},{f},{w})","put({w},beef,t)"],("beef","pork"),()),
 ("hc-e1","hand_crafted","The restaurant was shut when Kim arrived, so nothing happened.",("kim","sushi_bar","sushi","yuki","hiro"),["obs:open({r}):false"],(),()),
 ("hc-e2","hand_crafted","Ali ate his dish, and the waiter brought a stranger's check.",("ali2","falafel_place","falafel2","noor","cook12"),["enter({c},{r})","order({c},{f},{w})","eat({c},{f})","put({w},b2,t)"],(),("bill(b2).",)),
 ("hc-e3","hand_crafted","Before the food came, the owner told Pat the meal was free.",("pat","deli","reuben","rosa","cook13"),["enter({c},{r})","order({c},{f},{w})","pay(owner,b)","eat({c},{f})","leave({c})"],(),("people(owner).",)),
 ("hc-e4","hand_crafted","Mo ordered dumplings, was brought buns, and left without eating.",("mo","dim_sum","dumplings","jin","cook14"),["enter({c},{r})","order({c},{f},{w})","put({w},buns,t)","stand_up({c})"],("buns",),()),
 ("hc-e5","hand_crafted","Vera paid up front and was still served her borscht.",("vera","cafe_russe","borscht","igor","cook15"),["enter({c},{r})","order({c},{f},{w})","pay({c},b)","put({w},{f},t)"],(),()),
 ("hc-e6","hand_crafted","Dee ordered lemonade; the cook misread it and poured iced tea, which Dee drank.",("dee","lemon_stand","lemonade","cal","cook16"),["enter({c},{r})","order({c},{f},{w})","prepare({k},iced_tea,{w})","eat({c},iced_tea)"],("iced_tea",),()),
]
for id,src,exc_,names,acts,morefoods,extra in exc:
    c,r,f,w,k=names
    foods=(f,)+tuple(morefoods)
    lines=ent((c,),(r,),foods,w,k,extra)
    for i,a in enumerate(acts):
        a=a.format(c=c,r=r,f=f,w=w,k=k)
        if a.startswith("obs:"):
            body=a[4:]; val="true"
            if body.endswith(":false"): body=body[:-6]; val="false"
            lines.append(obs(body,i,val))
        else: lines.append(hpd(a,i))
    add(id,src,"exception",id,False,"",exc_,lines)

var=[
 ("gb-v1","Two friends walked in together; only Bo ordered, ate his pie and left.",("ann","bo"),("stew_house",),("stew","pie"),[("enter(ann,stew_house)",0),("enter(bo,stew_house)",0),("order(bo,pie,mary)",1),("eat(bo,pie)",2),("leave(bo)",3)],"new-only"),
 ("gb-v2","Carl came in first and Dora followed; he ordered soup and ate it.",("carl","dora"),("river_inn",),("soup2",),["enter(carl,river_inn)","enter(dora,river_inn)","order(carl,soup2,mary)","eat(carl,soup2)"],"new-only"),
 ("gb-v3","With two places on the street open, she picked the second and ordered.",("flo",),("north_cafe","south_cafe"),("tart",),["enter(flo,south_cafe)","order(flo,tart,mary)","eat(flo,tart)"],""),
 ("gb-v4","He came in and ordered from the menu; the waiter fetched it and he ate.",("gus",),("chalet",),("fondue","rosti"),["enter(gus,chalet)","order(gus,rosti,mary)","put(mary,rosti,t)","eat(gus,rosti)","leave(gus)"],""),
]
for id,exc_,cs,rs,fs,acts,lim in var:
    lines=ent(cs,rs,fs,"mary","chef_v")
    lines+=[hpd(*a) if isinstance(a,tuple) else hpd(a,i) for i,a in enumerate(acts)]
    add(id,"google_books","variation",id,False,lim,exc_,lines)

out=['<?xml version="1.0" encoding="UTF-8"?>','<corpus version="1">']
for id,src,typ,scen,rec,lim,exc_,lines in E:
    attrs=f'id="{id}" reconstructed="{"true" if rec else "false"}"'
    if lim: attrs+=f' limitation="{lim}"'
    out.append(f'  <story {attrs}>')
    out.append(f'    <excerpt>{html.escape(exc_)}</excerpt>')
    out.append(f'    <source>{src}</source>')
    out.append(f'    <type>{typ}</type>')
    out.append(f'    <scenario>{scen}</scenario>')
    out.append('    <logicform>')
    out+= ['      '+l for l in lines]
    out.append('    </logicform>')
    out.append('  </story>')
out.append('</corpus>')
open(sys.argv[1],'w').write('\n'.join(out)+'\n')
print(len(E))
